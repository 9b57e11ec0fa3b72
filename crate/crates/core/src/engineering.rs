//! Constrained design problems: helical spring weight and welded beam cost.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::problem::{Bounds, Problem};

/// Spring design vector `(w, d, L)`: wire diameter, mean coil diameter and
/// number of active coils.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpringDesign {
    pub w: f64,
    pub d: f64,
    pub coils: f64,
}

impl SpringDesign {
    pub const LOWER: [f64; 3] = [0.05, 0.25, 2.0];
    pub const UPPER: [f64; 3] = [2.0, 1.3, 15.0];

    pub fn from_slice(x: &[f64]) -> Self {
        Self {
            w: x[0],
            d: x[1],
            coils: x[2],
        }
    }

    pub fn weight(&self) -> f64 {
        (self.coils + 2.0) * self.w * self.w * self.d
    }

    /// `[g1, g2, g3, g4]`, each feasible when `<= 0`.
    pub fn constraints(&self) -> [f64; 4] {
        let Self { w, d, coils: l } = *self;
        [
            1.0 - d.powi(3) * l / (71_785.0 * w.powi(4)),
            1.0 - 140.45 * w / (d * d * l),
            2.0 * (w + d) / 3.0 - 1.0,
            d * (4.0 * d - w) / (w.powi(3) * (12_566.0 * d - w)) + 1.0 / (5108.0 * w * w) - 1.0,
        ]
    }
}

/// Welded beam design vector `(w, L, d, h)`: weld width, weld length, beam
/// depth and beam thickness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeldedBeamDesign {
    pub w: f64,
    pub l: f64,
    pub d: f64,
    pub h: f64,
}

/// Stress, deflection and buckling quantities of a beam design.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeamIntermediates {
    pub sigma: f64,
    pub q: f64,
    pub big_d: f64,
    pub j: f64,
    pub delta: f64,
    /// Torsional shear component `Q D / J`.
    pub beta_t: f64,
    /// Primary shear component `6000 / (sqrt(2) w L)`.
    pub alpha_t: f64,
    pub tau: f64,
    pub p_c: f64,
}

impl WeldedBeamDesign {
    pub const LOWER: [f64; 4] = [0.1, 0.1, 0.1, 0.1];
    pub const UPPER: [f64; 4] = [2.0, 10.0, 10.0, 2.0];

    pub fn from_slice(x: &[f64]) -> Self {
        Self {
            w: x[0],
            l: x[1],
            d: x[2],
            h: x[3],
        }
    }

    pub fn cost(&self) -> f64 {
        1.10471 * self.w * self.w * self.l + 0.04811 * self.d * self.h * (14.0 + self.l)
    }

    pub fn intermediates(&self) -> BeamIntermediates {
        let Self { w, l, d, h } = *self;
        let sigma = 504_000.0 / (h * d * d);
        let q = 6000.0 * (14.0 + l / 2.0);
        let big_d = 0.5 * (l * l + (w + d).powi(2)).sqrt();
        let j = SQRT_2 * w * l * (l * l / 6.0 + (w + d).powi(2) / 2.0);
        let delta = 65_856.0 / (30_000.0 * h * d.powi(3));
        let beta_t = q * big_d / j;
        let alpha_t = 6000.0 / (SQRT_2 * w * l);
        let tau = (alpha_t * alpha_t + alpha_t * beta_t * l / big_d + beta_t * beta_t).sqrt();
        let p_c = 0.61423e6 * (d * h.powi(3) / 6.0) * (1.0 - d * (30.0_f64 / 48.0).sqrt() / 28.0);
        BeamIntermediates {
            sigma,
            q,
            big_d,
            j,
            delta,
            beta_t,
            alpha_t,
            tau,
            p_c,
        }
    }

    /// `[g1, ..., g7]`, each feasible when `<= 0`.
    pub fn constraints(&self) -> [f64; 7] {
        let Self { w, l, d, h } = *self;
        let m = self.intermediates();
        [
            w - h,
            m.delta - 0.25,
            m.tau - 13_600.0,
            m.sigma - 30_000.0,
            0.10471 * w * w + 0.04811 * h * d * (14.0 + l) - 5.0,
            0.125 - w,
            6000.0 - m.p_c,
        ]
    }
}

pub fn spring_problem() -> Problem {
    let bounds = Bounds::new(SpringDesign::LOWER.to_vec(), SpringDesign::UPPER.to_vec())
        .expect("static spring bounds");
    let mut p = Problem::new("spring", bounds, |x| SpringDesign::from_slice(x).weight());
    for i in 0..4 {
        p = p.with_constraint(move |x| SpringDesign::from_slice(x).constraints()[i]);
    }
    p
}

pub fn welded_beam_problem() -> Problem {
    let bounds = Bounds::new(
        WeldedBeamDesign::LOWER.to_vec(),
        WeldedBeamDesign::UPPER.to_vec(),
    )
    .expect("static beam bounds");
    let mut p = Problem::new("welded-beam", bounds, |x| {
        WeldedBeamDesign::from_slice(x).cost()
    });
    for i in 0..7 {
        p = p.with_constraint(move |x| WeldedBeamDesign::from_slice(x).constraints()[i]);
    }
    p
}

/// Constrained problem by CLI name.
pub fn lookup_name(name: &str) -> Option<Problem> {
    match name {
        "spring" => Some(spring_problem()),
        "welded-beam" => Some(welded_beam_problem()),
        _ => None,
    }
}

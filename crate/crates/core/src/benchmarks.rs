//! Deterministic and stochastic test functions and their registry.
//!
//! Indices inside the formulas (Michalewicz, Griewank) are 1-based. The
//! stochastic functions take their noise vector explicitly in the `*_with_noise`
//! form; the registry wraps them so that every evaluation draws a fresh
//! `eps_i ~ U(0, 1)` from the trial's stream.

use std::f64::consts::{E, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::problem::{Bounds, Problem};
use crate::rng::RngState;

pub const MICHALEWICZ_M: i32 = 10;
pub const WAVE_BETA: f64 = 15.0;
pub const WAVE_M: i32 = 5;
pub const SCHWEFEL_ARGMIN: f64 = 420.968_746_359_982;

pub fn michalewicz(x: &[f64], m: i32) -> f64 {
    -x.iter()
        .enumerate()
        .map(|(i, &xi)| michalewicz_term(i + 1, xi, m))
        .sum::<f64>()
}

fn michalewicz_term(i: usize, xi: f64, m: i32) -> f64 {
    xi.sin() * (i as f64 * xi * xi / PI).sin().powi(2 * m)
}

pub fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| (1.0 - w[0]).powi(2) + 100.0 * (w[1] - w[0] * w[0]).powi(2))
        .sum()
}

pub fn de_jong(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

pub fn schwefel(x: &[f64]) -> f64 {
    x.iter().map(|v| -v * v.abs().sqrt().sin()).sum()
}

pub fn ackley(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / d;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / d;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

pub fn rastrigin(x: &[f64]) -> f64 {
    10.0 * x.len() as f64
        + x.iter()
            .map(|v| v * v - 10.0 * (2.0 * PI * v).cos())
            .sum::<f64>()
}

/// Two-dimensional only; callers validate the length.
pub fn easom(x: &[f64]) -> f64 {
    let (a, b) = (x[0], x[1]);
    -a.cos() * b.cos() * (-(a - PI).powi(2) - (b - PI).powi(2)).exp()
}

pub fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product::<f64>();
    sum - prod + 1.0
}

/// Standing wave with a noisy defect region; minimum -1 at `(pi, ..., pi)`.
pub fn stochastic_wave_with_noise(x: &[f64], eps: &[f64], beta: f64, m: i32) -> f64 {
    let wave = (-x.iter().map(|v| (v / beta).powi(2 * m)).sum::<f64>()).exp();
    let defect = (-x
        .iter()
        .zip(eps)
        .map(|(v, e)| e * (v - PI).powi(2))
        .sum::<f64>())
    .exp();
    let envelope = x.iter().map(|v| v.cos().powi(2)).product::<f64>();
    (wave - 2.0 * defect) * envelope
}

/// Singular at the origin, where it attains its minimum 0.
pub fn stochastic_singular_with_noise(x: &[f64], eps: &[f64]) -> f64 {
    let weighted = x.iter().zip(eps).map(|(v, e)| e * v.abs()).sum::<f64>();
    weighted * (-x.iter().map(|v| (v * v).sin()).sum::<f64>()).exp()
}

/// `eps` has one entry per consecutive pair, i.e. `x.len() - 1` values.
pub fn stochastic_rosenbrock_with_noise(x: &[f64], eps: &[f64]) -> f64 {
    x.windows(2)
        .zip(eps)
        .map(|(w, e)| (1.0 - w[0]).powi(2) + 100.0 * e * (w[1] - w[0] * w[0]).powi(2))
        .sum()
}

pub fn stochastic_de_jong_with_noise(x: &[f64], eps: &[f64]) -> f64 {
    x.iter().zip(eps).map(|(v, e)| e * v * v).sum()
}

fn draw_noise(rng: &mut RngState, n: usize) -> Vec<f64> {
    // open interval (0, 1)
    (0..n)
        .map(|_| loop {
            let e = rng.unit();
            if e > 0.0 {
                break e;
            }
        })
        .collect()
}

pub fn stochastic_wave(x: &[f64], rng: &mut RngState) -> f64 {
    let eps = draw_noise(rng, x.len());
    stochastic_wave_with_noise(x, &eps, WAVE_BETA, WAVE_M)
}

pub fn stochastic_singular(x: &[f64], rng: &mut RngState) -> f64 {
    let eps = draw_noise(rng, x.len());
    stochastic_singular_with_noise(x, &eps)
}

pub fn stochastic_rosenbrock(x: &[f64], rng: &mut RngState) -> f64 {
    let eps = draw_noise(rng, x.len().saturating_sub(1));
    stochastic_rosenbrock_with_noise(x, &eps)
}

pub fn stochastic_de_jong(x: &[f64], rng: &mut RngState) -> f64 {
    let eps = draw_noise(rng, x.len());
    stochastic_de_jong_with_noise(x, &eps)
}

/// Minimiser and minimum of a single Michalewicz term `-sin(x) sin(i x^2/pi)^2m`
/// on `[0, pi]`, via a dense grid followed by golden-section refinement.
fn michalewicz_term_min(i: usize, m: i32) -> (f64, f64) {
    let f = |x: f64| -michalewicz_term(i, x, m);
    let n = (20_000 * i.max(1)).min(2_000_000);
    let h = PI / n as f64;
    let best = (0..=n)
        .map(|k| k as f64 * h)
        .min_by(|a, b| f(*a).total_cmp(&f(*b)))
        .unwrap_or(0.0);
    let (mut a, mut b) = ((best - h).max(0.0), (best + h).min(PI));
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - ratio * (b - a);
        let d = a + ratio * (b - a);
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Global minimiser of the separable Michalewicz function in `dim` dimensions.
pub fn michalewicz_optimum(dim: usize, m: i32) -> (Vec<f64>, f64) {
    let parts: Vec<(f64, f64)> = (1..=dim).map(|i| michalewicz_term_min(i, m)).collect();
    let value = parts.iter().map(|p| p.1).sum();
    (parts.into_iter().map(|p| p.0).collect(), value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BenchmarkKind {
    Michalewicz,
    Rosenbrock,
    DeJong,
    Schwefel,
    Ackley,
    Rastrigin,
    Easom,
    Griewank,
    StochasticWave,
    StochasticSingular,
    StochasticRosenbrock,
    StochasticDeJong,
}

/// One row of the comparison table.
#[derive(Debug, Clone, Serialize)]
pub struct BenchmarkEntry {
    pub id: u8,
    pub name: &'static str,
    pub title: &'static str,
    pub kind: BenchmarkKind,
    pub default_dim: usize,
    pub lower: f64,
    pub upper: f64,
    pub stochastic: bool,
}

const REGISTRY: [BenchmarkEntry; 12] = [
    entry(
        1,
        "michalewicz",
        "Michalewicz",
        BenchmarkKind::Michalewicz,
        16,
        0.0,
        PI,
        false,
    ),
    entry(
        2,
        "rosenbrock",
        "Rosenbrock",
        BenchmarkKind::Rosenbrock,
        16,
        -5.0,
        5.0,
        false,
    ),
    entry(
        3,
        "dejong",
        "De Jong",
        BenchmarkKind::DeJong,
        32,
        -5.12,
        5.12,
        false,
    ),
    entry(
        4,
        "schwefel",
        "Schwefel",
        BenchmarkKind::Schwefel,
        32,
        -500.0,
        500.0,
        false,
    ),
    entry(
        5,
        "ackley",
        "Ackley",
        BenchmarkKind::Ackley,
        128,
        -32.768,
        32.768,
        false,
    ),
    entry(
        6,
        "rastrigin",
        "Rastrigin",
        BenchmarkKind::Rastrigin,
        8,
        -5.12,
        5.12,
        false,
    ),
    entry(
        7,
        "easom",
        "Easom",
        BenchmarkKind::Easom,
        2,
        -100.0,
        100.0,
        false,
    ),
    entry(
        8,
        "griewank",
        "Griewank",
        BenchmarkKind::Griewank,
        8,
        -600.0,
        600.0,
        false,
    ),
    entry(
        9,
        "wave-stoch",
        "Stochastic standing wave",
        BenchmarkKind::StochasticWave,
        2,
        -20.0,
        20.0,
        true,
    ),
    entry(
        10,
        "singular-stoch",
        "Stochastic singular",
        BenchmarkKind::StochasticSingular,
        2,
        -2.0 * PI,
        2.0 * PI,
        true,
    ),
    entry(
        11,
        "rosenbrock-stoch",
        "Stochastic Rosenbrock",
        BenchmarkKind::StochasticRosenbrock,
        8,
        -5.0,
        5.0,
        true,
    ),
    entry(
        12,
        "dejong-stoch",
        "Stochastic De Jong",
        BenchmarkKind::StochasticDeJong,
        8,
        -5.12,
        5.12,
        true,
    ),
];

#[allow(clippy::too_many_arguments)]
const fn entry(
    id: u8,
    name: &'static str,
    title: &'static str,
    kind: BenchmarkKind,
    default_dim: usize,
    lower: f64,
    upper: f64,
    stochastic: bool,
) -> BenchmarkEntry {
    BenchmarkEntry {
        id,
        name,
        title,
        kind,
        default_dim,
        lower,
        upper,
        stochastic,
    }
}

pub fn benchmark_registry() -> &'static [BenchmarkEntry] {
    &REGISTRY
}

pub fn lookup(id: u8) -> Option<&'static BenchmarkEntry> {
    REGISTRY.iter().find(|e| e.id == id)
}

pub fn lookup_name(name: &str) -> Option<&'static BenchmarkEntry> {
    REGISTRY.iter().find(|e| e.name == name)
}

impl BenchmarkEntry {
    fn min_dim(&self) -> usize {
        match self.kind {
            BenchmarkKind::Rosenbrock | BenchmarkKind::StochasticRosenbrock => 2,
            _ => 1,
        }
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.kind == BenchmarkKind::Easom && dim != 2 {
            return Err(Error::InvalidInput(format!(
                "easom is two-dimensional, got d = {dim}"
            )));
        }
        if dim < self.min_dim() {
            return Err(Error::InvalidInput(format!(
                "{} needs d >= {}, got {dim}",
                self.name,
                self.min_dim()
            )));
        }
        Ok(())
    }

    /// Known global minimiser in `dim` dimensions.
    pub fn optimum_point(&self, dim: usize) -> Vec<f64> {
        match self.kind {
            BenchmarkKind::Michalewicz => michalewicz_optimum(dim, MICHALEWICZ_M).0,
            BenchmarkKind::Rosenbrock | BenchmarkKind::StochasticRosenbrock => vec![1.0; dim],
            BenchmarkKind::Schwefel => vec![SCHWEFEL_ARGMIN; dim],
            BenchmarkKind::Easom | BenchmarkKind::StochasticWave => vec![PI; dim],
            _ => vec![0.0; dim],
        }
    }

    /// Known global minimum value in `dim` dimensions.
    pub fn optimum_value(&self, dim: usize) -> f64 {
        match self.kind {
            BenchmarkKind::Michalewicz => michalewicz_optimum(dim, MICHALEWICZ_M).1,
            BenchmarkKind::Schwefel => schwefel(&[SCHWEFEL_ARGMIN]) * dim as f64,
            BenchmarkKind::Easom | BenchmarkKind::StochasticWave => -1.0,
            _ => 0.0,
        }
    }

    /// Builds the problem at `dim` (or the registry default).
    pub fn problem(&self, dim: Option<usize>) -> Result<Problem> {
        let dim = dim.unwrap_or(self.default_dim);
        self.check_dim(dim)?;
        let bounds = Bounds::uniform(dim, self.lower, self.upper)?;
        let name = self.name;
        let problem = match self.kind {
            BenchmarkKind::Michalewicz => {
                Problem::new(name, bounds, |x| michalewicz(x, MICHALEWICZ_M))
            }
            BenchmarkKind::Rosenbrock => Problem::new(name, bounds, rosenbrock),
            BenchmarkKind::DeJong => Problem::new(name, bounds, de_jong),
            BenchmarkKind::Schwefel => Problem::new(name, bounds, schwefel),
            BenchmarkKind::Ackley => Problem::new(name, bounds, ackley),
            BenchmarkKind::Rastrigin => Problem::new(name, bounds, rastrigin),
            BenchmarkKind::Easom => Problem::new(name, bounds, easom),
            BenchmarkKind::Griewank => Problem::new(name, bounds, griewank),
            BenchmarkKind::StochasticWave => Problem::stochastic(name, bounds, stochastic_wave),
            BenchmarkKind::StochasticSingular => Problem::stochastic(name, bounds, stochastic_singular),
            BenchmarkKind::StochasticRosenbrock => {
                Problem::stochastic(name, bounds, stochastic_rosenbrock)
            }
            BenchmarkKind::StochasticDeJong => {
                Problem::stochastic(name, bounds, stochastic_de_jong)
            }
        };
        Ok(problem.with_known_optimum(self.optimum_value(dim), Some(self.optimum_point(dim))))
    }

    /// Evaluates the objective with a fixed noise vector (deterministic
    /// entries ignore it). Used for landscape snapshots and oracle tests.
    pub fn value_with_noise(&self, x: &[f64], eps: &[f64]) -> f64 {
        match self.kind {
            BenchmarkKind::Michalewicz => michalewicz(x, MICHALEWICZ_M),
            BenchmarkKind::Rosenbrock => rosenbrock(x),
            BenchmarkKind::DeJong => de_jong(x),
            BenchmarkKind::Schwefel => schwefel(x),
            BenchmarkKind::Ackley => ackley(x),
            BenchmarkKind::Rastrigin => rastrigin(x),
            BenchmarkKind::Easom => easom(x),
            BenchmarkKind::Griewank => griewank(x),
            BenchmarkKind::StochasticWave => stochastic_wave_with_noise(x, eps, WAVE_BETA, WAVE_M),
            BenchmarkKind::StochasticSingular => stochastic_singular_with_noise(x, eps),
            BenchmarkKind::StochasticRosenbrock => stochastic_rosenbrock_with_noise(x, eps),
            BenchmarkKind::StochasticDeJong => stochastic_de_jong_with_noise(x, eps),
        }
    }
}

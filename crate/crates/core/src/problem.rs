//! Problem representation shared by every optimizer: objective, box bounds,
//! inequality constraints, penalty transformation and evaluation counting.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngState;

/// Default weight of the quadratic constraint penalty.
pub const DEFAULT_PENALTY: f64 = 1e15;

pub type ObjectiveFn = dyn Fn(&[f64], &mut RngState) -> f64 + Send + Sync;
pub type ConstraintFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// Per-coordinate box `[lower_j, upper_j]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    /// Builds a box. `lower_j <= upper_j` is required; equal ends pin the
    /// coordinate.
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::InvalidInput(format!(
                "bounds need matching non-empty lower/upper, got {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "coordinate {j}: lower {lo} must not exceed upper {hi}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, j: usize) -> f64 {
        self.upper[j] - self.lower[j]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| lo <= v && v <= hi)
    }

    /// Projects `x` onto the box in place.
    pub fn clamp_in_place(&self, x: &mut [f64]) {
        for (v, (lo, hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.clamp(*lo, *hi);
        }
    }

    pub fn sample(&self, rng: &mut RngState) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| rng.uniform_unchecked(*lo, *hi))
            .collect()
    }
}

/// Component-wise projection of `x` onto `bounds`.
pub fn clamp_to_bounds(x: &[f64], bounds: &Bounds) -> Vec<f64> {
    let mut out = x.to_vec();
    bounds.clamp_in_place(&mut out);
    out
}

/// `raw + mu * sum(max(0, g_i)^2)` over constraint values `g_i`.
pub fn penalised_fitness(raw: f64, constraints: &[f64], mu: f64) -> f64 {
    let total: f64 = constraints.iter().map(|g| g.max(0.0).powi(2)).sum();
    if total == 0.0 {
        raw
    } else {
        raw + mu * total
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KnownOptimum {
    pub value: f64,
}

/// Counts objective evaluations. Never decremented.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct EvalCounter(u64);

impl EvalCounter {
    pub fn new() -> Self {
        Self(0)
    }

    pub fn count(&self) -> u64 {
        self.0
    }

    fn bump(&mut self) {
        self.0 += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluatedPoint {
    pub x: Vec<f64>,
    pub raw_objective: f64,
    pub penalized_fitness: f64,
    /// `max(0, g_i(x))` per constraint.
    pub constraint_violations: Vec<f64>,
}

impl EvaluatedPoint {
    pub fn is_feasible(&self) -> bool {
        self.constraint_violations.iter().all(|v| *v == 0.0)
    }
}

/// An optimization problem in minimization form.
#[derive(Clone)]
pub struct Problem {
    name: String,
    bounds: Bounds,
    objective: Arc<ObjectiveFn>,
    constraints: Vec<Arc<ConstraintFn>>,
    known_optimum: Option<KnownOptimum>,
    optimum_point: Option<Vec<f64>>,
    stochastic: bool,
    penalty: f64,
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("constraints", &self.constraints.len())
            .field("known_optimum", &self.known_optimum)
            .field("stochastic", &self.stochastic)
            .finish()
    }
}

impl Problem {
    /// A deterministic problem; the objective never touches the random stream.
    pub fn new<F>(name: impl Into<String>, bounds: Bounds, objective: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            bounds,
            objective: Arc::new(move |x: &[f64], _: &mut RngState| objective(x)),
            constraints: Vec::new(),
            known_optimum: None,
            optimum_point: None,
            stochastic: false,
            penalty: DEFAULT_PENALTY,
        }
    }

    /// A problem whose objective draws noise from the caller's stream.
    pub fn stochastic<F>(name: impl Into<String>, bounds: Bounds, objective: F) -> Self
    where
        F: Fn(&[f64], &mut RngState) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            bounds,
            objective: Arc::new(objective),
            constraints: Vec::new(),
            known_optimum: None,
            optimum_point: None,
            stochastic: true,
            penalty: DEFAULT_PENALTY,
        }
    }

    /// Adds an inequality constraint `g(x) <= 0`.
    pub fn with_constraint<G>(mut self, g: G) -> Self
    where
        G: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.constraints.push(Arc::new(g));
        self
    }

    pub fn with_known_optimum(mut self, value: f64, point: Option<Vec<f64>>) -> Self {
        self.known_optimum = Some(KnownOptimum { value });
        self.optimum_point = point;
        self
    }

    pub fn with_penalty(mut self, mu: f64) -> Self {
        self.penalty = mu;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn known_optimum(&self) -> Option<KnownOptimum> {
        self.known_optimum
    }

    pub fn optimum_point(&self) -> Option<&[f64]> {
        self.optimum_point.as_deref()
    }

    pub fn is_stochastic(&self) -> bool {
        self.stochastic
    }

    pub fn penalty(&self) -> f64 {
        self.penalty
    }

    pub fn constraint_count(&self) -> usize {
        self.constraints.len()
    }

    /// Raw constraint values `g_i(x)` (negative means slack).
    pub fn constraint_values(&self, x: &[f64]) -> Vec<f64> {
        self.constraints.iter().map(|g| g(x)).collect()
    }

    /// Objective value without touching the counter. Used by reporting code
    /// that must not perturb the evaluation accounting.
    pub fn objective_uncounted(&self, x: &[f64], rng: &mut RngState) -> f64 {
        (self.objective)(x, rng)
    }

    /// Evaluates `x`, bumping `counter` by one.
    pub fn evaluate(
        &self,
        x: &[f64],
        rng: &mut RngState,
        counter: &mut EvalCounter,
    ) -> Result<EvaluatedPoint> {
        if x.len() != self.dim() {
            return Err(Error::InvalidInput(format!(
                "{}: expected dimension {}, got {}",
                self.name,
                self.dim(),
                x.len()
            )));
        }
        counter.bump();
        let raw = (self.objective)(x, rng);
        let violations: Vec<f64> = self.constraints.iter().map(|g| g(x).max(0.0)).collect();
        let fitness = penalised_fitness(raw, &violations, self.penalty);
        if !raw.is_finite() || !fitness.is_finite() {
            return Err(Error::NumericFailure {
                value: if raw.is_finite() { fitness } else { raw },
                x: x.to_vec(),
            });
        }
        Ok(EvaluatedPoint {
            x: x.to_vec(),
            raw_objective: raw,
            penalized_fitness: fitness,
            constraint_violations: violations,
        })
    }
}

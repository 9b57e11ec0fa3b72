//! Run records, convergence traces and the stopping rule shared by every
//! optimizer.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::problem::{EvalCounter, EvaluatedPoint, Problem};
use crate::rng::RngState;

/// Fresh-noise samples used to confirm a candidate on a stochastic objective.
pub const NOISY_CONFIRM_SAMPLES: usize = 100;
/// The confirmation band on stochastic objectives is this multiple of the
/// deterministic success gap.
pub const NOISY_BAND_FACTOR: f64 = 10.0;

/// Stopping controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StopCriteria {
    pub max_evaluations: u64,
    /// Absolute gap to the known optimum, scaled by `max(1, |f*|)`.
    pub success_tolerance: f64,
    pub stall_window: u64,
    pub stall_tolerance: f64,
}

impl Default for StopCriteria {
    fn default() -> Self {
        Self {
            max_evaluations: 100_000,
            success_tolerance: 1e-5,
            stall_window: 500,
            stall_tolerance: 1e-5,
        }
    }
}

impl StopCriteria {
    pub fn with_budget(max_evaluations: u64) -> Self {
        Self {
            max_evaluations,
            ..Self::default()
        }
    }

    pub fn success_gap(&self, f_star: f64) -> f64 {
        self.success_tolerance * f_star.abs().max(1.0)
    }

    pub fn noisy_success_gap(&self, f_star: f64) -> f64 {
        NOISY_BAND_FACTOR * self.success_gap(f_star)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StopDecision {
    Continue,
    Success,
    Stall,
    Budget,
}

/// Best value seen after `evaluations` evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub evaluations: u64,
    pub best: f64,
}

/// Best-so-far value at evaluation count `at`, from an improvement trace.
fn best_at(trace: &[TracePoint], at: u64) -> Option<f64> {
    let idx = trace.partition_point(|p| p.evaluations <= at);
    idx.checked_sub(1).map(|i| trace[i].best)
}

/// Decides whether a run should stop.
///
/// `trace` records the best penalized fitness each time it changes, and
/// `evaluations` is the current counter. Priority is success, then budget,
/// then stall. The stall rule only applies when `f_star` is unknown; with a
/// known optimum the run continues until success or budget.
pub fn stopping_rule(
    trace: &[TracePoint],
    evaluations: u64,
    f_star: Option<f64>,
    criteria: &StopCriteria,
) -> StopDecision {
    let Some(last) = trace.last() else {
        return StopDecision::Continue;
    };
    if let Some(f) = f_star {
        if (last.best - f).abs() <= criteria.success_gap(f) {
            return StopDecision::Success;
        }
    }
    if evaluations >= criteria.max_evaluations {
        return StopDecision::Budget;
    }
    if f_star.is_none() && criteria.stall_window > 0 && evaluations >= criteria.stall_window {
        let earlier = best_at(trace, evaluations - criteria.stall_window);
        if let Some(earlier) = earlier {
            if earlier - last.best < criteria.stall_tolerance {
                return StopDecision::Stall;
            }
        }
    }
    StopDecision::Continue
}

/// Outcome of one optimizer run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub problem: String,
    pub dim: usize,
    pub seed: u64,
    pub evaluations: u64,
    pub best_x: Vec<f64>,
    pub best_raw: f64,
    pub best_fitness: f64,
    pub success: bool,
    pub stop_reason: StopDecision,
    pub trace: Vec<TracePoint>,
    #[serde(skip)]
    pub wall_clock_secs: f64,
}

/// Incumbent tracking shared by the optimizers: best point, improvement
/// trace and stop decision.
#[derive(Debug)]
pub(crate) struct Tracker {
    pub counter: EvalCounter,
    criteria: StopCriteria,
    f_star: Option<f64>,
    best: Option<EvaluatedPoint>,
    trace: Vec<TracePoint>,
    confirmed: Option<Vec<f64>>,
    started: Instant,
}

impl Tracker {
    pub fn new(problem: &Problem, criteria: StopCriteria) -> Self {
        Self {
            counter: EvalCounter::new(),
            criteria,
            f_star: problem.known_optimum().map(|k| k.value),
            best: None,
            trace: Vec::new(),
            confirmed: None,
            started: Instant::now(),
        }
    }

    pub fn remaining(&self) -> u64 {
        self.criteria
            .max_evaluations
            .saturating_sub(self.counter.count())
    }

    /// Offers a candidate incumbent; strictly better fitness wins.
    pub fn observe(&mut self, point: &EvaluatedPoint) {
        let better = self
            .best
            .as_ref()
            .is_none_or(|b| point.penalized_fitness < b.penalized_fitness);
        if better {
            self.best = Some(point.clone());
            let evaluations = self.counter.count();
            match self.trace.last_mut() {
                Some(last) if last.evaluations == evaluations => {
                    last.best = point.penalized_fitness
                }
                _ => self.trace.push(TracePoint {
                    evaluations,
                    best: point.penalized_fitness,
                }),
            }
        }
    }

    /// Replaces the incumbent after its fitness was re-sampled.
    pub fn reset_best(&mut self, x: &[f64], fitness: f64, raw: f64) {
        let evaluations = self.counter.count();
        if let Some(b) = self.best.as_mut() {
            b.x = x.to_vec();
            b.penalized_fitness = fitness;
            b.raw_objective = raw;
        }
        self.trace.push(TracePoint {
            evaluations,
            best: fitness,
        });
    }

    /// Stop decision. On stochastic objectives a noisy incumbent that reaches
    /// the optimum only nominates a candidate; the run succeeds once the mean
    /// of [`NOISY_CONFIRM_SAMPLES`] fresh evaluations (all counted) lies within
    /// the noisy band. Each incumbent point is confirmed at most once.
    pub fn decision(&mut self, problem: &Problem, rng: &mut RngState) -> Result<StopDecision> {
        let plain = stopping_rule(
            &self.trace,
            self.counter.count(),
            self.f_star,
            &self.criteria,
        );
        let (Some(f_star), true) = (self.f_star, problem.is_stochastic()) else {
            return Ok(plain);
        };
        let Some(best) = self.best.as_ref() else {
            return Ok(plain);
        };
        let nominated = best.penalized_fitness - f_star <= self.criteria.noisy_success_gap(f_star);
        if nominated && self.confirmed.as_deref() != Some(best.x.as_slice()) {
            let x = best.x.clone();
            let mut sum = 0.0;
            let mut taken = 0;
            while taken < NOISY_CONFIRM_SAMPLES && self.remaining() > 0 {
                sum += problem
                    .evaluate(&x, rng, &mut self.counter)?
                    .penalized_fitness;
                taken += 1;
            }
            if taken == NOISY_CONFIRM_SAMPLES
                && (sum / taken as f64 - f_star).abs() <= self.criteria.noisy_success_gap(f_star)
            {
                return Ok(StopDecision::Success);
            }
            self.confirmed = Some(x);
        }
        Ok(if self.counter.count() >= self.criteria.max_evaluations {
            StopDecision::Budget
        } else {
            StopDecision::Continue
        })
    }

    /// Closes the run. `success` is the stop reason, except on problems
    /// without a known optimum where a feasible final best counts.
    pub fn finish(
        mut self,
        algorithm: &str,
        problem: &Problem,
        seed: u64,
        reason: StopDecision,
    ) -> RunRecord {
        let best = self.best.take().expect("at least one evaluation");
        let evaluations = self.counter.count();
        // without a known optimum a run succeeds by ending feasible
        let success =
            reason == StopDecision::Success || (self.f_star.is_none() && best.is_feasible());
        if self
            .trace
            .last()
            .is_some_and(|p| p.evaluations < evaluations)
        {
            self.trace.push(TracePoint {
                evaluations,
                best: best.penalized_fitness,
            });
        }
        RunRecord {
            algorithm: algorithm.to_string(),
            problem: problem.name().to_string(),
            dim: problem.dim(),
            seed,
            evaluations,
            best_x: best.x,
            best_raw: best.raw_objective,
            best_fitness: best.penalized_fitness,
            // without a known optimum a run succeeds by ending feasible
            success,
            stop_reason: reason,
            trace: self.trace,
            wall_clock_secs: self.started.elapsed().as_secs_f64(),
        }
    }
}

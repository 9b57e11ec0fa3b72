use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::record::{RunRecord, StopCriteria, StopDecision, Tracker};
use crate::rng::RngState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsoConfig {
    pub swarm: usize,
    /// Inertia at the start of the budget, decreasing linearly to `inertia_end`.
    pub inertia_start: f64,
    pub inertia_end: f64,
    pub c1: f64,
    pub c2: f64,
    /// Velocity limit as a fraction of each coordinate's range.
    pub velocity_clamp: f64,
    pub stop: StopCriteria,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            swarm: 20,
            inertia_start: 0.9,
            inertia_end: 0.4,
            c1: 2.0,
            c2: 2.0,
            velocity_clamp: 0.5,
            stop: StopCriteria::default(),
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.swarm < 2 {
            return Err(Error::InvalidParameter(format!(
                "swarm size must be >= 2, got {}",
                self.swarm
            )));
        }
        if !(self.c1 >= 0.0 && self.c2 >= 0.0) {
            return Err(Error::InvalidParameter(
                "c1 and c2 must be non-negative".into(),
            ));
        }
        if !(self.velocity_clamp >= 0.0) {
            return Err(Error::InvalidParameter(
                "velocity clamp must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Swarm state handed to observers after every iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct Swarm {
    pub positions: Vec<Vec<f64>>,
    pub velocities: Vec<Vec<f64>>,
    pub personal_best: Vec<Vec<f64>>,
    pub personal_fitness: Vec<f64>,
    pub global_best: usize,
}

impl Swarm {
    pub fn global_best_fitness(&self) -> f64 {
        self.personal_fitness[self.global_best]
    }
}

pub fn pso_minimise(problem: &Problem, cfg: &PsoConfig, rng: &mut RngState) -> Result<RunRecord> {
    pso_minimise_observed(problem, cfg, rng, |_| {})
}

pub fn pso_minimise_observed<F>(
    problem: &Problem,
    cfg: &PsoConfig,
    rng: &mut RngState,
    mut observe: F,
) -> Result<RunRecord>
where
    F: FnMut(&Swarm),
{
    cfg.validate()?;
    let seed = rng.seed();
    let dim = problem.dim();
    let bounds = problem.bounds();
    let vmax: Vec<f64> = (0..dim)
        .map(|j| cfg.velocity_clamp * bounds.width(j))
        .collect();
    let mut tracker = Tracker::new(problem, cfg.stop);

    let mut swarm = Swarm {
        positions: Vec::with_capacity(cfg.swarm),
        velocities: vec![vec![0.0; dim]; cfg.swarm],
        personal_best: Vec::with_capacity(cfg.swarm),
        personal_fitness: Vec::with_capacity(cfg.swarm),
        global_best: 0,
    };
    for i in 0..cfg.swarm {
        let x = bounds.sample(rng);
        let e = problem.evaluate(&x, rng, &mut tracker.counter)?;
        tracker.observe(&e);
        if e.penalized_fitness
            < swarm
                .personal_fitness
                .get(swarm.global_best)
                .copied()
                .unwrap_or(f64::INFINITY)
        {
            swarm.global_best = i;
        }
        swarm.positions.push(x.clone());
        swarm.personal_best.push(x);
        swarm.personal_fitness.push(e.penalized_fitness);
    }
    observe(&swarm);

    let budget = cfg.stop.max_evaluations.max(1) as f64;
    let reason = loop {
        let decision = tracker.decision(problem, rng)?;
        if decision != StopDecision::Continue {
            break decision;
        }
        let progress = (tracker.counter.count() as f64 / budget).min(1.0);
        let inertia = cfg.inertia_start - (cfg.inertia_start - cfg.inertia_end) * progress;
        for i in 0..cfg.swarm {
            if tracker.remaining() == 0 {
                break;
            }
            let g = swarm.global_best;
            for j in 0..dim {
                let r1 = rng.unit();
                let r2 = rng.unit();
                let x = swarm.positions[i][j];
                let v = inertia * swarm.velocities[i][j]
                    + cfg.c1 * r1 * (swarm.personal_best[i][j] - x)
                    + cfg.c2 * r2 * (swarm.personal_best[g][j] - x);
                swarm.velocities[i][j] = v.clamp(-vmax[j], vmax[j]);
                swarm.positions[i][j] = x + swarm.velocities[i][j];
            }
            bounds.clamp_in_place(&mut swarm.positions[i]);
            let e = problem.evaluate(&swarm.positions[i], rng, &mut tracker.counter)?;
            tracker.observe(&e);
            if e.penalized_fitness < swarm.personal_fitness[i] {
                swarm.personal_fitness[i] = e.penalized_fitness;
                swarm.personal_best[i] = e.x;
                if swarm.personal_fitness[i] < swarm.global_best_fitness() {
                    swarm.global_best = i;
                }
            }
        }
        observe(&swarm);
    };
    Ok(tracker.finish("pso", problem, seed, reason))
}

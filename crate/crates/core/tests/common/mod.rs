//! Invariant checks shared by the property tests and the acceptance runner.
#![allow(dead_code)]

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use cuckoo_core::baselines::{ga_minimise_observed, pso_minimise_observed, GaConfig, PsoConfig};
use cuckoo_core::benchmarks::{lookup, BenchmarkEntry};
use cuckoo_core::cuckoo::{cs_minimise_observed, CsConfig};
use cuckoo_core::engineering::{spring_problem, welded_beam_problem};
use cuckoo_core::problem::{clamp_to_bounds, penalised_fitness, DEFAULT_PENALTY};
use cuckoo_core::{Bounds, EvalCounter, Problem, RngState, StopCriteria};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Check = Result<(), TestCaseError>;

/// Wraps a registry problem so that every objective call is counted
/// independently of the optimizer's own counter.
pub fn counted(entry: &BenchmarkEntry, dim: usize) -> (Problem, Arc<AtomicU64>) {
    let inner = entry.problem(Some(dim)).unwrap();
    let calls = Arc::new(AtomicU64::new(0));
    let c = Arc::clone(&calls);
    let bounds = inner.bounds().clone();
    let opt = inner.known_optimum().unwrap().value;
    let point = inner.optimum_point().map(<[f64]>::to_vec);
    let problem = if inner.is_stochastic() {
        Problem::stochastic(entry.name, bounds, move |x: &[f64], rng: &mut RngState| {
            c.fetch_add(1, Ordering::Relaxed);
            inner.objective_uncounted(x, rng)
        })
    } else {
        Problem::new(entry.name, bounds, move |x: &[f64]| {
            c.fetch_add(1, Ordering::Relaxed);
            inner.objective_uncounted(x, &mut RngState::new(0))
        })
    };
    (problem.with_known_optimum(opt, point), calls)
}

pub fn penalty_identity(raw: f64, slack: Vec<f64>, excess: f64) -> Check {
    // feasible: every g <= 0 contributes nothing
    prop_assert_eq!(penalised_fitness(raw, &slack, DEFAULT_PENALTY), raw);
    let mut violated = slack;
    violated.push(excess);
    prop_assert!(penalised_fitness(raw, &violated, DEFAULT_PENALTY) > raw);
    Ok(())
}

fn from_unit(bounds: &Bounds, unit: &[f64]) -> Vec<f64> {
    unit.iter()
        .enumerate()
        .map(|(j, u)| bounds.lower()[j] + u * bounds.width(j))
        .collect()
}

/// Engineering problems: penalized = raw exactly when feasible, and the
/// feasible ordering of two designs is the raw ordering.
pub fn engineering_penalty(beam: bool, a: Vec<f64>, b: Vec<f64>) -> Check {
    let p = if beam {
        welded_beam_problem()
    } else {
        spring_problem()
    };
    let mut rng = RngState::new(0);
    let mut counter = EvalCounter::new();
    let ea = p
        .evaluate(
            &from_unit(p.bounds(), &a[..p.dim()]),
            &mut rng,
            &mut counter,
        )
        .unwrap();
    let eb = p
        .evaluate(
            &from_unit(p.bounds(), &b[..p.dim()]),
            &mut rng,
            &mut counter,
        )
        .unwrap();
    for e in [&ea, &eb] {
        if e.is_feasible() {
            prop_assert_eq!(e.penalized_fitness, e.raw_objective);
        } else {
            prop_assert!(e.penalized_fitness > e.raw_objective);
        }
    }
    if ea.is_feasible() && eb.is_feasible() {
        prop_assert_eq!(
            ea.penalized_fitness < eb.penalized_fitness,
            ea.raw_objective < eb.raw_objective
        );
    }
    prop_assert_eq!(counter.count(), 2);
    Ok(())
}

pub fn clamp_idempotent(x: Vec<f64>) -> Check {
    let b = Bounds::uniform(x.len(), -5.12, 5.12).unwrap();
    let once = clamp_to_bounds(&x, &b);
    prop_assert!(b.contains(&once));
    prop_assert_eq!(clamp_to_bounds(&once, &b), once.clone());
    for (c, v) in once.iter().zip(&x) {
        if b.contains(std::slice::from_ref(v)) {
            prop_assert_eq!(c, v);
        }
    }
    Ok(())
}

/// For the stochastic entries the optimum does not move with the noise.
pub fn stochastic_minimum(id: u8, dim: usize, eps: Vec<f64>) -> Check {
    let e = lookup(id).unwrap();
    let x = e.optimum_point(dim);
    let f = e.value_with_noise(&x, &eps[..dim]);
    prop_assert!(
        (f - e.optimum_value(dim)).abs() <= 1e-5,
        "{} d={dim}: {f}",
        e.name
    );
    Ok(())
}

/// Elitism, bounds and exact accounting on a short run.
pub fn run_invariants(algo: u8, id: u8, dim: usize, seed: u64, budget: u64) -> Check {
    let entry = lookup(id).unwrap();
    let dim = if entry.name == "easom" { 2 } else { dim };
    let (problem, calls) = counted(entry, dim);
    let stop = StopCriteria::with_budget(budget);
    let mut rng = RngState::new(seed);
    let mut best = Vec::new();
    let mut in_bounds = true;
    let b = problem.bounds().clone();
    let record = match algo {
        0 => {
            let cfg = CsConfig {
                stop,
                ..CsConfig::default()
            };
            let mut phases = (0, 0, 0);
            let r = cs_minimise_observed(&problem, &cfg, &mut rng, |pop| {
                best.push(pop.best_fitness());
                in_bounds &= pop.nests.iter().all(|x| b.contains(x));
                phases = (pop.eggs_laid, pop.nests_rebuilt, pop.resampled);
            })
            .unwrap();
            if !entry.stochastic {
                prop_assert_eq!(r.evaluations, cfg.n as u64 + phases.0 + phases.1 + phases.2);
            }
            r
        }
        1 => {
            let cfg = PsoConfig {
                stop,
                ..PsoConfig::default()
            };
            pso_minimise_observed(&problem, &cfg, &mut rng, |s| {
                best.push(s.global_best_fitness());
                in_bounds &= s.positions.iter().all(|x| b.contains(x));
            })
            .unwrap()
        }
        _ => {
            let cfg = GaConfig {
                stop,
                ..GaConfig::default()
            };
            ga_minimise_observed(&problem, &cfg, &mut rng, |g| {
                best.push(g.best_fitness());
                in_bounds &= g.individuals.iter().all(|x| b.contains(x));
            })
            .unwrap()
        }
    };
    prop_assert!(in_bounds, "left the box");
    prop_assert!(b.contains(&record.best_x));
    prop_assert!(
        best.windows(2).all(|w| w[1] <= w[0]),
        "best increased: {best:?}"
    );
    prop_assert_eq!(record.evaluations, calls.load(Ordering::Relaxed));
    prop_assert!(record.evaluations <= budget.max(40));
    prop_assert!(record
        .trace
        .windows(2)
        .all(|w| w[1].best <= w[0].best || entry.stochastic));
    Ok(())
}

pub fn unit_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..=1.0f64, n)
}

pub fn noise_vec(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(1e-9..=1.0f64, n)
}

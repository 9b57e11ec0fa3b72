use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::record::{RunRecord, StopCriteria, StopDecision, Tracker};
use crate::rng::RngState;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population: usize,
    pub tournament: usize,
    /// BLX-alpha extension of the parents' interval.
    pub blend_alpha: f64,
    pub crossover_rate: f64,
    /// Per-gene mutation probability; `None` means `1/d`.
    pub mutation_rate: Option<f64>,
    /// Mutation standard deviation as a fraction of each coordinate's range.
    pub mutation_scale: f64,
    pub elitism: usize,
    pub stop: StopCriteria,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population: 40,
            tournament: 2,
            blend_alpha: 0.5,
            crossover_rate: 0.9,
            mutation_rate: None,
            mutation_scale: 0.1,
            elitism: 1,
            stop: StopCriteria::default(),
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population < 4 || !self.population.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "GA population must be even and >= 4, got {}",
                self.population
            )));
        }
        if self.tournament == 0 || self.elitism >= self.population {
            return Err(Error::InvalidParameter(
                "tournament size must be positive and elitism below the population".into(),
            ));
        }
        let rate_ok = |r: f64| (0.0..=1.0).contains(&r);
        if !rate_ok(self.crossover_rate) || !self.mutation_rate.is_none_or(rate_ok) {
            return Err(Error::InvalidParameter(
                "GA rates must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Generation {
    pub individuals: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
}

impl Generation {
    pub fn best_fitness(&self) -> f64 {
        self.fitness.iter().copied().fold(f64::INFINITY, f64::min)
    }

    fn order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.fitness.len()).collect();
        idx.sort_by(|a, b| self.fitness[*a].total_cmp(&self.fitness[*b]));
        idx
    }

    fn tournament(&self, size: usize, rng: &mut RngState) -> usize {
        let mut winner = rng.index(self.fitness.len());
        for _ in 1..size {
            let c = rng.index(self.fitness.len());
            if self.fitness[c] < self.fitness[winner] {
                winner = c;
            }
        }
        winner
    }
}

pub fn ga_minimise(problem: &Problem, cfg: &GaConfig, rng: &mut RngState) -> Result<RunRecord> {
    ga_minimise_observed(problem, cfg, rng, |_| {})
}

pub fn ga_minimise_observed<F>(
    problem: &Problem,
    cfg: &GaConfig,
    rng: &mut RngState,
    mut observe: F,
) -> Result<RunRecord>
where
    F: FnMut(&Generation),
{
    cfg.validate()?;
    let seed = rng.seed();
    let dim = problem.dim();
    let bounds = problem.bounds();
    let mutation_rate = cfg.mutation_rate.unwrap_or(1.0 / dim as f64);
    let mut tracker = Tracker::new(problem, cfg.stop);

    let mut gen = Generation {
        individuals: Vec::with_capacity(cfg.population),
        fitness: Vec::with_capacity(cfg.population),
    };
    for _ in 0..cfg.population {
        let x = bounds.sample(rng);
        let e = problem.evaluate(&x, rng, &mut tracker.counter)?;
        tracker.observe(&e);
        gen.individuals.push(e.x);
        gen.fitness.push(e.penalized_fitness);
    }
    observe(&gen);

    let reason = loop {
        let decision = tracker.decision(problem, rng)?;
        if decision != StopDecision::Continue {
            break decision;
        }
        let mut next = Generation {
            individuals: Vec::with_capacity(cfg.population),
            fitness: Vec::with_capacity(cfg.population),
        };
        for &i in gen.order().iter().take(cfg.elitism) {
            next.individuals.push(gen.individuals[i].clone());
            next.fitness.push(gen.fitness[i]);
        }
        let mut offspring = Vec::with_capacity(cfg.population);
        while next.individuals.len() + offspring.len() < cfg.population {
            let a = &gen.individuals[gen.tournament(cfg.tournament, rng)];
            let b = &gen.individuals[gen.tournament(cfg.tournament, rng)];
            let (mut c1, mut c2) = (a.clone(), b.clone());
            if rng.unit() < cfg.crossover_rate {
                for j in 0..dim {
                    let (lo, hi) = (a[j].min(b[j]), a[j].max(b[j]));
                    let ext = cfg.blend_alpha * (hi - lo);
                    c1[j] = rng.uniform_unchecked(lo - ext, hi + ext);
                    c2[j] = rng.uniform_unchecked(lo - ext, hi + ext);
                }
            }
            for child in [&mut c1, &mut c2] {
                for j in 0..dim {
                    if rng.unit() < mutation_rate {
                        child[j] += rng.gaussian() * cfg.mutation_scale * bounds.width(j);
                    }
                }
                bounds.clamp_in_place(child);
            }
            offspring.push(c1);
            if next.individuals.len() + offspring.len() < cfg.population {
                offspring.push(c2);
            }
        }
        let mut truncated = false;
        for child in offspring {
            if tracker.remaining() == 0 {
                truncated = true;
                break;
            }
            let e = problem.evaluate(&child, rng, &mut tracker.counter)?;
            tracker.observe(&e);
            next.individuals.push(e.x);
            next.fitness.push(e.penalized_fitness);
        }
        if truncated {
            // budget ran out mid-generation: keep the best of old and new
            let mut merged = gen.clone();
            merged
                .individuals
                .extend(next.individuals.iter().skip(cfg.elitism).cloned());
            merged
                .fitness
                .extend(next.fitness.iter().skip(cfg.elitism).copied());
            let order = merged.order();
            gen = Generation {
                individuals: order
                    .iter()
                    .take(cfg.population)
                    .map(|&i| merged.individuals[i].clone())
                    .collect(),
                fitness: order
                    .iter()
                    .take(cfg.population)
                    .map(|&i| merged.fitness[i])
                    .collect(),
            };
        } else {
            gen = next;
        }
        observe(&gen);
    };
    Ok(tracker.finish("ga", problem, seed, reason))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::lookup_name;

    #[test]
    fn validation() {
        assert!(GaConfig::default().validate().is_ok());
        assert!(GaConfig {
            population: 3,
            ..GaConfig::default()
        }
        .validate()
        .is_err());
        assert!(GaConfig {
            population: 41,
            ..GaConfig::default()
        }
        .validate()
        .is_err());
        assert!(GaConfig {
            crossover_rate: 1.5,
            ..GaConfig::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn frozen_evolution_keeps_best() {
        let p = lookup_name("schwefel").unwrap().problem(Some(4)).unwrap();
        let cfg = GaConfig {
            crossover_rate: 0.0,
            mutation_rate: Some(0.0),
            stop: StopCriteria::with_budget(4000),
            ..GaConfig::default()
        };
        let mut bests = Vec::new();
        ga_minimise_observed(&p, &cfg, &mut RngState::new(1), |g| {
            bests.push(g.best_fitness())
        })
        .unwrap();
        assert!(bests.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn elitism_monotone_and_bounded() {
        let p = lookup_name("rastrigin").unwrap().problem(Some(6)).unwrap();
        let cfg = GaConfig {
            stop: StopCriteria::with_budget(10_000),
            ..GaConfig::default()
        };
        let mut last = f64::INFINITY;
        let rec = ga_minimise_observed(&p, &cfg, &mut RngState::new(2), |g| {
            assert!(g.best_fitness() <= last);
            last = g.best_fitness();
            assert_eq!(g.individuals.len(), 40);
            assert!(g.individuals.iter().all(|x| p.bounds().contains(x)));
        })
        .unwrap();
        assert_eq!(rec.evaluations, 10_000);
        assert_eq!(rec.best_fitness, last);
    }
}

//! Cuckoo Search with Levy flights.
//!
//! A generation has three phases:
//!
//! 1. **Egg laying.** Cuckoos lay eggs by Levy flights. By default every nest
//!    lays one egg per generation and the egg replaces its own nest when it is
//!    strictly better ([`EggLaying::EveryNestOwn`]). [`EggLaying::Single`] lays
//!    one egg from a random nest and drops it into another random nest.
//! 2. **Discovery.** Each non-best nest is discovered with probability `pa`
//!    and takes a biased random-walk step `r (x_p1 - x_p2)` between two
//!    randomly paired nests; the rebuilt nest is kept only if it is better.
//!    [`Discovery::PerComponent`] draws the test per coordinate instead.
//! 3. **Ranking.** The best nest is carried over unchanged (elitism).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{Bounds, EvalCounter, Problem};
use crate::record::{RunRecord, StopCriteria, StopDecision, Tracker};
use crate::rng::{LevyParams, RngState};

/// Form of the Levy-flight proposal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevyMove {
    /// `x + alpha0 * levy * (x - best) * N(0, 1)`, entry-wise.
    #[default]
    Biased,
    /// `x + alpha0 * levy`, entry-wise.
    Raw,
}

/// How discovered nests are rebuilt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Abandonment {
    /// `x_k + r (x_p1(k) - x_p2(k))` with greedy acceptance.
    #[default]
    PermutationWalk,
    /// Discovered coordinates are redrawn uniformly; accepted unconditionally.
    FreshUniform,
}

/// How many eggs are laid per generation and where they land.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EggLaying {
    /// One egg from a nest chosen by [`CuckooSource`], dropped into a
    /// uniformly random nest.
    Single,
    /// One egg from every nest, each competing with its own nest.
    #[default]
    EveryNestOwn,
}

/// Granularity of the discovery test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Discovery {
    /// The whole nest is discovered with probability `pa`.
    #[default]
    PerNest,
    /// Every coordinate is discovered independently with probability `pa`;
    /// a nest with at least one discovered coordinate is rebuilt.
    PerComponent,
}

/// Treatment of cached fitness on stochastic objectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseHandling {
    /// Keep the single noisy sample taken when the nest was built.
    #[default]
    Cached,
    /// Re-sample every nest at the start of each generation (counted).
    Resample,
}

/// Which nest a single egg flies from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CuckooSource {
    #[default]
    Uniform,
    Best,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsConfig {
    pub n: usize,
    pub pa: f64,
    pub alpha0: f64,
    #[serde(rename = "beta")]
    pub levy: LevyParams,
    pub stop: StopCriteria,
    pub eggs: EggLaying,
    pub cuckoo_source: CuckooSource,
    pub levy_move: LevyMove,
    pub discovery: Discovery,
    pub abandonment: Abandonment,
    pub noise: NoiseHandling,
    /// Optional hard cap on generations, independent of the budget.
    pub max_generations: Option<u64>,
}

impl Default for CsConfig {
    fn default() -> Self {
        Self {
            n: 20,
            pa: 0.25,
            alpha0: 0.3,
            levy: LevyParams::default(),
            stop: StopCriteria::default(),
            eggs: EggLaying::default(),
            cuckoo_source: CuckooSource::default(),
            levy_move: LevyMove::default(),
            discovery: Discovery::default(),
            abandonment: Abandonment::default(),
            noise: NoiseHandling::default(),
            max_generations: None,
        }
    }
}

impl CsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!(
                "nest count must be >= 2, got {}",
                self.n
            )));
        }
        if !(0.0..=1.0).contains(&self.pa) {
            return Err(Error::InvalidParameter(format!(
                "pa must lie in [0, 1], got {}",
                self.pa
            )));
        }
        if !(self.alpha0 > 0.0 && self.alpha0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "alpha0 must be positive, got {}",
                self.alpha0
            )));
        }
        Ok(())
    }
}

/// The host nests with their cached penalized fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct NestPopulation {
    pub nests: Vec<Vec<f64>>,
    pub fitness: Vec<f64>,
    pub raw: Vec<f64>,
    pub best_index: usize,
    pub generation: u64,
    /// Evaluations spent per phase since initialization.
    pub eggs_laid: u64,
    pub nests_rebuilt: u64,
    pub resampled: u64,
}

impl NestPopulation {
    pub fn len(&self) -> usize {
        self.nests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nests.is_empty()
    }

    pub fn best(&self) -> &[f64] {
        &self.nests[self.best_index]
    }

    pub fn best_fitness(&self) -> f64 {
        self.fitness[self.best_index]
    }

    fn rank(&mut self) {
        // first minimum wins ties
        let mut best = 0;
        for (i, f) in self.fitness.iter().enumerate() {
            if *f < self.fitness[best] {
                best = i;
            }
        }
        self.best_index = best;
    }

    fn set(&mut self, i: usize, x: Vec<f64>, fitness: f64, raw: f64) {
        self.nests[i] = x;
        self.fitness[i] = fitness;
        self.raw[i] = raw;
    }
}

// The public single-phase operations take a bare counter; internally every
// phase runs against a tracker so that incumbents and budget are shared.
fn with_counter<T>(
    problem: &Problem,
    counter: &mut EvalCounter,
    f: impl FnOnce(&mut Tracker) -> Result<T>,
) -> Result<T> {
    let mut tracker = Tracker::new(problem, StopCriteria::with_budget(u64::MAX));
    tracker.counter = *counter;
    let out = f(&mut tracker);
    *counter = tracker.counter;
    out
}

fn init_population(
    problem: &Problem,
    n: usize,
    rng: &mut RngState,
    tracker: &mut Tracker,
) -> Result<NestPopulation> {
    let mut pop = NestPopulation {
        nests: Vec::with_capacity(n),
        fitness: Vec::with_capacity(n),
        raw: Vec::with_capacity(n),
        best_index: 0,
        generation: 0,
        eggs_laid: 0,
        nests_rebuilt: 0,
        resampled: 0,
    };
    for _ in 0..n {
        let x = problem.bounds().sample(rng);
        let e = problem.evaluate(&x, rng, &mut tracker.counter)?;
        tracker.observe(&e);
        pop.nests.push(e.x);
        pop.fitness.push(e.penalized_fitness);
        pop.raw.push(e.raw_objective);
    }
    pop.rank();
    Ok(pop)
}

/// Places `n` nests uniformly in the box and evaluates them.
pub fn initialise_population(
    problem: &Problem,
    n: usize,
    rng: &mut RngState,
    counter: &mut EvalCounter,
) -> Result<NestPopulation> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "nest count must be >= 2, got {n}"
        )));
    }
    with_counter(problem, counter, |t| init_population(problem, n, rng, t))
}

/// Proposes a new solution from `nest` by a Levy flight, clamped to `bounds`.
///
/// In the biased form the step vanishes when `nest == best`.
pub fn levy_flight_move(
    nest: &[f64],
    best: &[f64],
    cfg: &CsConfig,
    bounds: &Bounds,
    rng: &mut RngState,
) -> Vec<f64> {
    let step = rng.levy_step(&cfg.levy, nest.len());
    let mut out: Vec<f64> = match cfg.levy_move {
        LevyMove::Biased => nest
            .iter()
            .zip(best)
            .zip(&step)
            .map(|((x, b), s)| x + cfg.alpha0 * s * (x - b) * rng.gaussian())
            .collect(),
        LevyMove::Raw => nest
            .iter()
            .zip(&step)
            .map(|(x, s)| x + cfg.alpha0 * s)
            .collect(),
    };
    bounds.clamp_in_place(&mut out);
    out
}

/// Lays an egg from nest `from`; it replaces `host` (or a random nest when
/// `host` is `None`) iff strictly better.
fn lay_egg(
    pop: &mut NestPopulation,
    problem: &Problem,
    cfg: &CsConfig,
    rng: &mut RngState,
    tracker: &mut Tracker,
    from: usize,
    host: Option<usize>,
) -> Result<()> {
    let egg = levy_flight_move(&pop.nests[from], pop.best(), cfg, problem.bounds(), rng);
    let e = problem.evaluate(&egg, rng, &mut tracker.counter)?;
    pop.eggs_laid += 1;
    tracker.observe(&e);
    let j = host.unwrap_or_else(|| rng.index(pop.len()));
    if e.penalized_fitness < pop.fitness[j] {
        pop.set(j, e.x, e.penalized_fitness, e.raw_objective);
        if pop.fitness[j] < pop.best_fitness() {
            pop.best_index = j;
        }
    }
    Ok(())
}

fn single_egg(
    pop: &mut NestPopulation,
    problem: &Problem,
    cfg: &CsConfig,
    rng: &mut RngState,
    tracker: &mut Tracker,
) -> Result<()> {
    let from = match cfg.cuckoo_source {
        CuckooSource::Uniform => rng.index(pop.len()),
        CuckooSource::Best => pop.best_index,
    };
    lay_egg(pop, problem, cfg, rng, tracker, from, None)
}

fn egg_phase(
    pop: &mut NestPopulation,
    problem: &Problem,
    cfg: &CsConfig,
    rng: &mut RngState,
    tracker: &mut Tracker,
) -> Result<()> {
    match cfg.eggs {
        EggLaying::Single => single_egg(pop, problem, cfg, rng, tracker),
        EggLaying::EveryNestOwn => {
            for i in 0..pop.len() {
                if tracker.remaining() == 0 {
                    break;
                }
                lay_egg(pop, problem, cfg, rng, tracker, i, Some(i))?;
            }
            Ok(())
        }
    }
}

/// Lays one cuckoo egg from a random nest and drops it into a random nest,
/// replacing the host iff strictly better. Costs one evaluation.
pub fn propose_and_replace(
    pop: &mut NestPopulation,
    problem: &Problem,
    cfg: &CsConfig,
    rng: &mut RngState,
    counter: &mut EvalCounter,
) -> Result<()> {
    with_counter(problem, counter, |t| single_egg(pop, problem, cfg, rng, t))
}

/// Runs the configured egg-laying phase of one generation.
pub fn lay_eggs(
    pop: &mut NestPopulation,
    problem: &Problem,
    cfg: &CsConfig,
    rng: &mut RngState,
    counter: &mut EvalCounter,
) -> Result<()> {
    with_counter(problem, counter, |t| egg_phase(pop, problem, cfg, rng, t))
}

fn abandon(
    pop: &mut NestPopulation,
    problem: &Problem,
    cfg: &CsConfig,
    rng: &mut RngState,
    tracker: &mut Tracker,
) -> Result<()> {
    let n = pop.len();
    let dim = problem.dim();
    let bounds = problem.bounds();
    let snapshot = pop.nests.clone();
    let p1 = rng.random_permutation(n);
    let p2 = rng.random_permutation(n);
    let elite = pop.best_index;
    for k in 0..n {
        let mask: Vec<bool> = match cfg.discovery {
            Discovery::PerNest => vec![rng.unit() < cfg.pa; dim],
            Discovery::PerComponent => (0..dim).map(|_| rng.unit() < cfg.pa).collect(),
        };
        if k == elite || !mask.contains(&true) {
            continue;
        }
        if tracker.remaining() == 0 {
            break;
        }
        let mut candidate = snapshot[k].clone();
        match cfg.abandonment {
            Abandonment::PermutationWalk => {
                let r = rng.unit();
                for j in (0..dim).filter(|&j| mask[j]) {
                    candidate[j] += r * (snapshot[p1[k]][j] - snapshot[p2[k]][j]);
                }
            }
            Abandonment::FreshUniform => {
                for j in (0..dim).filter(|&j| mask[j]) {
                    candidate[j] = rng.uniform_unchecked(bounds.lower()[j], bounds.upper()[j]);
                }
            }
        }
        bounds.clamp_in_place(&mut candidate);
        let e = problem.evaluate(&candidate, rng, &mut tracker.counter)?;
        pop.nests_rebuilt += 1;
        tracker.observe(&e);
        let accept = match cfg.abandonment {
            Abandonment::PermutationWalk => e.penalized_fitness < pop.fitness[k],
            Abandonment::FreshUniform => true,
        };
        if accept {
            pop.set(k, e.x, e.penalized_fitness, e.raw_objective);
        }
    }
    pop.rank();
    Ok(())
}

/// Discovers non-best nests with probability `pa` and rebuilds them. Costs
/// one evaluation per rebuilt nest; the best nest is never touched.
pub fn abandon_worst(
    pop: &mut NestPopulation,
    problem: &Problem,
    cfg: &CsConfig,
    rng: &mut RngState,
    counter: &mut EvalCounter,
) -> Result<()> {
    with_counter(problem, counter, |t| abandon(pop, problem, cfg, rng, t))
}

fn resample(
    pop: &mut NestPopulation,
    problem: &Problem,
    rng: &mut RngState,
    tracker: &mut Tracker,
) -> Result<()> {
    for i in 0..pop.len() {
        if tracker.remaining() == 0 {
            break;
        }
        let e = problem.evaluate(&pop.nests[i], rng, &mut tracker.counter)?;
        pop.resampled += 1;
        pop.fitness[i] = e.penalized_fitness;
        pop.raw[i] = e.raw_objective;
    }
    pop.rank();
    let b = pop.best_index;
    tracker.reset_best(&pop.nests[b], pop.fitness[b], pop.raw[b]);
    Ok(())
}

/// Runs Cuckoo Search until the stopping rule fires.
pub fn cs_minimise(problem: &Problem, cfg: &CsConfig, rng: &mut RngState) -> Result<RunRecord> {
    cs_minimise_observed(problem, cfg, rng, |_| {})
}

/// As [`cs_minimise`], calling `observe` with the population after
/// initialization and after every generation.
pub fn cs_minimise_observed<F>(
    problem: &Problem,
    cfg: &CsConfig,
    rng: &mut RngState,
    mut observe: F,
) -> Result<RunRecord>
where
    F: FnMut(&NestPopulation),
{
    cfg.validate()?;
    let seed = rng.seed();
    let mut tracker = Tracker::new(problem, cfg.stop);
    let mut pop = init_population(problem, cfg.n, rng, &mut tracker)?;
    observe(&pop);
    let reason = loop {
        let decision = tracker.decision(problem, rng)?;
        if decision != StopDecision::Continue {
            break decision;
        }
        if cfg.max_generations.is_some_and(|g| pop.generation >= g) {
            break StopDecision::Budget;
        }
        if cfg.noise == NoiseHandling::Resample && problem.is_stochastic() {
            resample(&mut pop, problem, rng, &mut tracker)?;
        }
        egg_phase(&mut pop, problem, cfg, rng, &mut tracker)?;
        abandon(&mut pop, problem, cfg, rng, &mut tracker)?;
        pop.generation += 1;
        observe(&pop);
    };
    Ok(tracker.finish("cs", problem, seed, reason))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::lookup_name;
    use crate::diagnostics::hill_tail_exponent;

    fn dejong(d: usize) -> Problem {
        lookup_name("dejong").unwrap().problem(Some(d)).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(CsConfig::default().validate().is_ok());
        let bad = |f: fn(&mut CsConfig)| {
            let mut c = CsConfig::default();
            f(&mut c);
            c.validate().is_err()
        };
        assert!(bad(|c| c.n = 1));
        assert!(bad(|c| c.pa = 1.5));
        assert!(bad(|c| c.pa = -0.1));
        assert!(bad(|c| c.alpha0 = 0.0));
    }

    #[test]
    fn initial_population_contract() {
        let p = dejong(4);
        let mut c = EvalCounter::new();
        let pop = initialise_population(&p, 20, &mut RngState::new(1), &mut c).unwrap();
        assert_eq!(pop.len(), 20);
        assert_eq!(c.count(), 20);
        assert!(pop.nests.iter().all(|x| p.bounds().contains(x)));
        let min = pop.fitness.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(pop.best_fitness(), min);

        let mut c2 = EvalCounter::new();
        let again = initialise_population(&p, 20, &mut RngState::new(1), &mut c2).unwrap();
        assert_eq!(pop, again);
        assert!(initialise_population(&p, 1, &mut RngState::new(1), &mut c2).is_err());
    }

    #[test]
    fn degenerate_coordinate_stays_constant() {
        let b = Bounds::new(vec![-1.0, 0.5], vec![1.0, 0.5]).unwrap();
        let p = Problem::new("pin", b, |x: &[f64]| x[0] * x[0]);
        let mut c = EvalCounter::new();
        let pop = initialise_population(&p, 10, &mut RngState::new(2), &mut c).unwrap();
        assert!(pop.nests.iter().all(|x| x[1] == 0.5));
    }

    #[test]
    fn levy_move_degenerate_cases() {
        let b = Bounds::uniform(3, -5.0, 5.0).unwrap();
        let mut rng = RngState::new(3);
        let x = vec![1.0, -2.0, 0.5];
        let cfg = CsConfig::default();
        assert_eq!(levy_flight_move(&x, &x, &cfg, &b, &mut rng), x);
        let zero = CsConfig {
            alpha0: 0.0,
            ..CsConfig::default()
        };
        assert_eq!(levy_flight_move(&x, &[0.0; 3], &zero, &b, &mut rng), x);
    }

    #[test]
    fn levy_move_has_heavy_tail() {
        let b = Bounds::uniform(1, -1e300, 1e300).unwrap();
        let mut rng = RngState::new(4);
        let cfg = CsConfig::default();
        let steps: Vec<f64> = (0..100_000)
            .map(|_| levy_flight_move(&[1.0], &[0.0], &cfg, &b, &mut rng)[0] - 1.0)
            .collect();
        let est = hill_tail_exponent(&steps, 0.01);
        assert!((est - 2.5).abs() < 0.2, "{est}");
    }

    #[test]
    fn replacement_rule() {
        let p = dejong(2);
        let cfg = CsConfig::default();
        let mut rng = RngState::new(5);
        let mut c = EvalCounter::new();
        let mut pop = initialise_population(&p, 5, &mut rng, &mut c).unwrap();
        // every nest already optimal: nothing can be strictly better
        for i in 0..5 {
            pop.set(i, vec![0.0, 0.0], 0.0, 0.0);
        }
        let before = pop.clone();
        propose_and_replace(&mut pop, &p, &cfg, &mut rng, &mut c).unwrap();
        assert_eq!(pop.nests, before.nests);
        assert_eq!(pop.fitness, before.fitness);
        assert_eq!(c.count(), 6);

        // every nest terrible: the cuckoo must land somewhere
        for i in 0..5 {
            pop.fitness[i] = f64::INFINITY;
        }
        propose_and_replace(&mut pop, &p, &cfg, &mut rng, &mut c).unwrap();
        assert_eq!(pop.fitness.iter().filter(|f| f.is_finite()).count(), 1);
        assert!(pop.best_fitness().is_finite());
        assert_eq!(c.count(), 7);
    }

    #[test]
    fn own_nest_eggs_cost_n() {
        let p = dejong(3);
        let cfg = CsConfig::default();
        let mut rng = RngState::new(6);
        let mut c = EvalCounter::new();
        let mut pop = initialise_population(&p, 20, &mut rng, &mut c).unwrap();
        let before = pop.fitness.clone();
        lay_eggs(&mut pop, &p, &cfg, &mut rng, &mut c).unwrap();
        assert_eq!(c.count(), 40);
        // own-nest competition never worsens any nest
        assert!(pop.fitness.iter().zip(&before).all(|(a, b)| a <= b));
    }

    #[test]
    fn abandonment_counts() {
        let p = dejong(3);
        let mut rng = RngState::new(6);
        let mut c = EvalCounter::new();
        let mut pop = initialise_population(&p, 20, &mut rng, &mut c).unwrap();
        let frozen = CsConfig {
            pa: 0.0,
            ..CsConfig::default()
        };
        let before = pop.clone();
        abandon_worst(&mut pop, &p, &frozen, &mut rng, &mut c).unwrap();
        assert_eq!((pop.clone(), c.count()), (before, 20));

        for discovery in [Discovery::PerNest, Discovery::PerComponent] {
            let all = CsConfig {
                pa: 1.0,
                discovery,
                ..CsConfig::default()
            };
            let start = c.count();
            let elite = pop.best().to_vec();
            abandon_worst(&mut pop, &p, &all, &mut rng, &mut c).unwrap();
            assert_eq!(c.count() - start, 19);
            assert!(pop.nests.contains(&elite));
        }
    }

    #[test]
    fn abandonment_rate() {
        let p = dejong(3);
        let mut rng = RngState::new(7);
        let mut c = EvalCounter::new();
        let pop = initialise_population(&p, 20, &mut rng, &mut c).unwrap();
        let trials = 10_000;
        // per nest: (n - 1) pa; per component: (n - 1) (1 - (1 - pa)^d)
        for (discovery, expected) in [
            (Discovery::PerNest, 19.0 * 0.25),
            (Discovery::PerComponent, 19.0 * (1.0 - 0.75f64.powi(3))),
        ] {
            let cfg = CsConfig {
                discovery,
                ..CsConfig::default()
            };
            let start = c.count();
            for _ in 0..trials {
                let mut fresh = pop.clone();
                abandon_worst(&mut fresh, &p, &cfg, &mut rng, &mut c).unwrap();
            }
            let mean = (c.count() - start) as f64 / trials as f64;
            assert!((mean - expected).abs() < 0.1, "{discovery:?}: {mean}");
        }
    }

    #[test]
    fn zero_budget_returns_initial_best() {
        let p = dejong(4);
        let cfg = CsConfig {
            stop: StopCriteria::with_budget(0),
            ..CsConfig::default()
        };
        let mut c = EvalCounter::new();
        let pop = initialise_population(&p, 20, &mut RngState::new(8), &mut c).unwrap();
        let rec = cs_minimise(&p, &cfg, &mut RngState::new(8)).unwrap();
        assert_eq!(rec.evaluations, 20);
        assert_eq!(rec.best_fitness, pop.best_fitness());
        assert_eq!(rec.stop_reason, StopDecision::Budget);
    }

    #[test]
    fn generation_cap() {
        let p = dejong(2);
        let cfg = CsConfig {
            max_generations: Some(15),
            ..CsConfig::default()
        };
        let mut gens = 0;
        cs_minimise_observed(&p, &cfg, &mut RngState::new(1), |_| gens += 1).unwrap();
        assert!(gens <= 16);
    }

    #[test]
    fn run_is_deterministic() {
        let p = dejong(5);
        let cfg = CsConfig {
            stop: StopCriteria::with_budget(5000),
            ..CsConfig::default()
        };
        let a = cs_minimise(&p, &cfg, &mut RngState::new(9)).unwrap();
        let b = cs_minimise(&p, &cfg, &mut RngState::new(9)).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn solves_de_jong() {
        let p = dejong(8);
        let cfg = CsConfig {
            stop: StopCriteria::with_budget(30_000),
            ..CsConfig::default()
        };
        let rec = cs_minimise(&p, &cfg, &mut RngState::new(10)).unwrap();
        assert!(
            rec.success,
            "{} after {}",
            rec.best_fitness, rec.evaluations
        );
        assert!(rec.evaluations <= 30_000);
    }

    #[test]
    fn single_egg_variant_runs() {
        let p = dejong(4);
        let cfg = CsConfig {
            eggs: EggLaying::Single,
            discovery: Discovery::PerNest,
            stop: StopCriteria::with_budget(3000),
            ..CsConfig::default()
        };
        let mut last = None;
        let rec = cs_minimise_observed(&p, &cfg, &mut RngState::new(11), |pop| {
            last = Some((pop.eggs_laid, pop.nests_rebuilt, pop.generation));
        })
        .unwrap();
        let (eggs, rebuilt, gens) = last.unwrap();
        assert_eq!(eggs, gens);
        assert_eq!(rec.evaluations, 20 + eggs + rebuilt);
    }
}

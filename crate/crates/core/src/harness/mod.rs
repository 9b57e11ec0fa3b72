//! Repeated seeded trials, aggregate statistics and comparison tables.

mod config;
mod export;

pub use config::parse_pairs;
pub use export::{
    export_landscape_grid, export_nest_trace, export_results, landscape_grid, nest_trace,
    nest_trace_config, read_results_csv, read_results_jsonl, write_results, JsonLine, NestRow,
    ResultRow, ResultsFile, ResultsFormat,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{ga_minimise, pso_minimise, GaConfig, PsoConfig};
use crate::benchmarks;
use crate::cuckoo::{cs_minimise, CsConfig};
use crate::engineering;
use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::record::{RunRecord, StopCriteria, NOISY_CONFIRM_SAMPLES};
use crate::rng::RngState;

/// Stream index reserved for the post-run noise-aware judgement.
const JUDGE_STREAM: u64 = 0x4a55_4447;

/// Algorithm choice with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algorithm", content = "params", rename_all = "lowercase")]
pub enum AlgorithmConfig {
    Cs(CsConfig),
    Pso(PsoConfig),
    Ga(GaConfig),
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        AlgorithmConfig::Cs(CsConfig::default())
    }
}

impl AlgorithmConfig {
    pub const NAMES: [&'static str; 3] = ["cs", "pso", "ga"];

    /// Default parameters for `name`.
    pub fn named(name: &str) -> Result<Self> {
        match name {
            "cs" => Ok(AlgorithmConfig::Cs(CsConfig::default())),
            "pso" => Ok(AlgorithmConfig::Pso(PsoConfig::default())),
            "ga" => Ok(AlgorithmConfig::Ga(GaConfig::default())),
            _ => Err(Error::Config(format!(
                "unknown algorithm `{name}` (expected cs, pso or ga)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmConfig::Cs(_) => "cs",
            AlgorithmConfig::Pso(_) => "pso",
            AlgorithmConfig::Ga(_) => "ga",
        }
    }

    pub fn stop(&self) -> &StopCriteria {
        match self {
            AlgorithmConfig::Cs(c) => &c.stop,
            AlgorithmConfig::Pso(c) => &c.stop,
            AlgorithmConfig::Ga(c) => &c.stop,
        }
    }

    pub fn stop_mut(&mut self) -> &mut StopCriteria {
        match self {
            AlgorithmConfig::Cs(c) => &mut c.stop,
            AlgorithmConfig::Pso(c) => &mut c.stop,
            AlgorithmConfig::Ga(c) => &mut c.stop,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            AlgorithmConfig::Cs(c) => c.validate(),
            AlgorithmConfig::Pso(c) => c.validate(),
            AlgorithmConfig::Ga(c) => c.validate(),
        }
    }

    /// One run from a fresh stream seeded with `seed`.
    pub fn run(&self, problem: &Problem, seed: u64) -> Result<RunRecord> {
        let mut rng = RngState::new(seed);
        match self {
            AlgorithmConfig::Cs(c) => cs_minimise(problem, c, &mut rng),
            AlgorithmConfig::Pso(c) => pso_minimise(problem, c, &mut rng),
            AlgorithmConfig::Ga(c) => ga_minimise(problem, c, &mut rng),
        }
    }
}

/// One experiment: an algorithm on a problem, repeated over seeded trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub problem: String,
    /// `None` uses the registry default.
    pub dim: Option<usize>,
    pub trials: usize,
    pub base_seed: u64,
    #[serde(flatten)]
    pub algorithm: AlgorithmConfig,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            problem: "dejong".into(),
            dim: None,
            trials: 100,
            base_seed: 0,
            algorithm: AlgorithmConfig::default(),
        }
    }
}

/// Budget of a single engineering solve.
pub const SOLVE_BUDGET: u64 = 50_000;
/// Stall window of a single engineering solve: a tenth of the budget.
pub const SOLVE_STALL_WINDOW: u64 = 5_000;

impl ExperimentSpec {
    /// Defaults for solving one constrained design problem: one trial with
    /// [`SOLVE_BUDGET`] evaluations and a [`SOLVE_STALL_WINDOW`] stall window.
    pub fn solve_defaults(problem: &str) -> Self {
        let mut spec = Self {
            problem: problem.into(),
            trials: 1,
            ..Self::default()
        };
        let stop = spec.stop_mut();
        stop.max_evaluations = SOLVE_BUDGET;
        stop.stall_window = SOLVE_STALL_WINDOW;
        spec
    }

    pub fn new(problem: &str, algorithm: AlgorithmConfig) -> Self {
        Self {
            problem: problem.into(),
            algorithm,
            ..Self::default()
        }
    }

    pub fn stop(&self) -> &StopCriteria {
        self.algorithm.stop()
    }

    pub fn stop_mut(&mut self) -> &mut StopCriteria {
        self.algorithm.stop_mut()
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        let stop = self.stop();
        if stop.max_evaluations == 0 {
            return Err(Error::Config("budget must be positive".into()));
        }
        if !(stop.success_tolerance >= 0.0 && stop.stall_tolerance >= 0.0) {
            return Err(Error::Config("tolerances must be non-negative".into()));
        }
        self.algorithm
            .validate()
            .map_err(|e| Error::Config(e.to_string()))
    }

    /// Resolves the problem from the benchmark registry or the engineering
    /// problems.
    pub fn build_problem(&self) -> Result<Problem> {
        resolve_problem(&self.problem, self.dim)
    }

    /// Seed of trial `i`.
    pub fn trial_seed(&self, i: usize) -> u64 {
        self.base_seed.wrapping_add(i as u64)
    }
}

/// Looks a problem up by name.
pub fn resolve_problem(name: &str, dim: Option<usize>) -> Result<Problem> {
    if let Some(entry) = benchmarks::lookup_name(name) {
        return entry.problem(dim).map_err(|e| Error::Config(e.to_string()));
    }
    let problem = engineering::lookup_name(name)
        .ok_or_else(|| Error::Config(format!("unknown problem `{name}`")))?;
    match dim {
        Some(d) if d != problem.dim() => Err(Error::Config(format!(
            "{name} has fixed dimension {}, got {d}",
            problem.dim()
        ))),
        _ => Ok(problem),
    }
}

/// Re-judges a finished run on a stochastic objective: the mean of
/// [`NOISY_CONFIRM_SAMPLES`] fresh, uncounted evaluations at the returned
/// point must lie within the noise-aware band around `f*`.
pub fn judge_stochastic(
    problem: &Problem,
    record: &RunRecord,
    criteria: &StopCriteria,
    rng: &mut RngState,
) -> bool {
    let Some(f_star) = problem.known_optimum().map(|k| k.value) else {
        return record.success;
    };
    let mean = (0..NOISY_CONFIRM_SAMPLES)
        .map(|_| problem.objective_uncounted(&record.best_x, rng))
        .sum::<f64>()
        / NOISY_CONFIRM_SAMPLES as f64;
    (mean - f_star).abs() <= criteria.noisy_success_gap(f_star)
}

/// Statistics over trials in the usual comparison-table convention: evaluation mean and
/// sample standard deviation over **successful trials only**.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub successes: usize,
    /// Percent.
    pub success_rate: f64,
    pub mean_evaluations: Option<f64>,
    pub std_evaluations: Option<f64>,
    /// Median evaluations-to-success with failed trials counted as
    /// infinitely expensive; `None` when the median trial failed.
    pub median_evaluations: Option<f64>,
}

impl Summary {
    /// From `(evaluations, success)` pairs.
    pub fn from_outcomes(outcomes: &[(u64, bool)]) -> Self {
        let trials = outcomes.len();
        let wins: Vec<f64> = outcomes
            .iter()
            .filter(|o| o.1)
            .map(|o| o.0 as f64)
            .collect();
        let successes = wins.len();
        let mean = (!wins.is_empty()).then(|| wins.iter().sum::<f64>() / successes as f64);
        let std = mean.map(|m| {
            if successes < 2 {
                0.0
            } else {
                let ss: f64 = wins.iter().map(|w| (w - m).powi(2)).sum();
                (ss / (successes - 1) as f64).sqrt()
            }
        });
        let mut cost: Vec<f64> = outcomes
            .iter()
            .map(|&(e, ok)| if ok { e as f64 } else { f64::INFINITY })
            .collect();
        cost.sort_by(f64::total_cmp);
        let median = match trials {
            0 => None,
            n if n % 2 == 1 => Some(cost[n / 2]),
            n => Some(0.5 * (cost[n / 2 - 1] + cost[n / 2])),
        }
        .filter(|m| m.is_finite());
        Self {
            trials,
            successes,
            success_rate: if trials == 0 {
                0.0
            } else {
                100.0 * successes as f64 / trials as f64
            },
            mean_evaluations: mean,
            std_evaluations: std,
            median_evaluations: median,
        }
    }

    /// Comparison-table cell: `mean ± std (rate%)`, or `— (0%)` without successes.
    pub fn cell(&self) -> String {
        match (self.mean_evaluations, self.std_evaluations) {
            (Some(m), Some(s)) => format!("{m:.0} ± {s:.0} ({:.0}%)", self.success_rate),
            _ => "— (0%)".to_string(),
        }
    }
}

/// Outcome of [`run_experiment`].
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateStats {
    pub spec: ExperimentSpec,
    pub dim: usize,
    pub summary: Summary,
    /// Ordered by seed.
    pub records: Vec<RunRecord>,
}

impl AggregateStats {
    pub fn from_records(spec: ExperimentSpec, dim: usize, records: Vec<RunRecord>) -> Self {
        let outcomes: Vec<(u64, bool)> =
            records.iter().map(|r| (r.evaluations, r.success)).collect();
        Self {
            spec,
            dim,
            summary: Summary::from_outcomes(&outcomes),
            records,
        }
    }
}

/// Runs `spec.trials` independent trials (in parallel) with seeds
/// `base_seed + i` and aggregates them.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<AggregateStats> {
    spec.validate()?;
    let problem = spec.build_problem()?;
    let criteria = *spec.stop();
    let records = (0..spec.trials)
        .into_par_iter()
        .map(|i| {
            let seed = spec.trial_seed(i);
            let mut record = spec.algorithm.run(&problem, seed)?;
            if problem.is_stochastic() {
                let mut judge = RngState::new(seed).split(JUDGE_STREAM);
                record.success = judge_stochastic(&problem, &record, &criteria, &mut judge);
            }
            Ok(record)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AggregateStats::from_records(
        spec.clone(),
        problem.dim(),
        records,
    ))
}

/// Problems as rows, algorithms as columns.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ComparisonTable {
    pub algorithms: Vec<String>,
    /// `(problem, dim, cells)`; a missing combination is an empty cell.
    pub rows: Vec<(String, usize, Vec<String>)>,
}

impl ComparisonTable {
    pub fn from_stats(stats: &[AggregateStats]) -> Self {
        let mut table = ComparisonTable::default();
        for s in stats {
            let algo = s.spec.algorithm.name().to_string();
            if !table.algorithms.contains(&algo) {
                table.algorithms.push(algo);
            }
        }
        for s in stats {
            let col = table
                .algorithms
                .iter()
                .position(|a| a == s.spec.algorithm.name())
                .expect("collected above");
            let row = match table
                .rows
                .iter()
                .position(|r| r.0 == s.spec.problem && r.1 == s.dim)
            {
                Some(r) => r,
                None => {
                    table.rows.push((s.spec.problem.clone(), s.dim, Vec::new()));
                    table.rows.len() - 1
                }
            };
            let cells = &mut table.rows[row].2;
            cells.resize(table.algorithms.len(), String::new());
            cells[col] = s.summary.cell();
        }
        let width = table.algorithms.len();
        for row in &mut table.rows {
            row.2.resize(width, String::new());
        }
        table
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// CSV with columns `problem, dim, <algorithms...>`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["problem".to_string(), "dim".to_string()];
        header.extend(self.algorithms.iter().cloned());
        w.write_record(&header)?;
        for (problem, dim, cells) in &self.rows {
            let mut rec = vec![problem.clone(), dim.to_string()];
            rec.extend(cells.iter().cloned());
            w.write_record(&rec)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }

    /// Aligned plain-text rendering.
    pub fn to_text(&self) -> String {
        let mut head = vec!["problem".to_string()];
        head.extend(self.algorithms.iter().map(|a| a.to_uppercase()));
        let mut lines = vec![head];
        for (problem, dim, cells) in &self.rows {
            let mut l = vec![format!("{problem} (d={dim})")];
            l.extend(cells.iter().cloned());
            lines.push(l);
        }
        let cols = lines[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|c| {
                lines
                    .iter()
                    .map(|l| l[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for l in lines {
            let cells: Vec<String> = l
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// Runs every spec and tabulates the outcome.
pub fn compare(specs: &[ExperimentSpec]) -> Result<(ComparisonTable, Vec<AggregateStats>)> {
    let stats = specs
        .iter()
        .map(run_experiment)
        .collect::<Result<Vec<_>>>()?;
    Ok((ComparisonTable::from_stats(&stats), stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_conventions() {
        let s = Summary::from_outcomes(&[(100, true)]);
        assert_eq!(
            (s.mean_evaluations, s.std_evaluations),
            (Some(100.0), Some(0.0))
        );
        assert_eq!(s.median_evaluations, Some(100.0));
        assert_eq!(s.cell(), "100 ± 0 (100%)");

        let s = Summary::from_outcomes(&[(100, true), (300, true), (5000, false), (7, false)]);
        assert_eq!(s.mean_evaluations, Some(200.0));
        assert!((s.std_evaluations.unwrap() - 100.0 * 2f64.sqrt()).abs() < 1e-9);
        assert_eq!(s.success_rate, 50.0);
        assert_eq!(s.median_evaluations, None);
        assert_eq!(s.cell(), "200 ± 141 (50%)");

        let s = Summary::from_outcomes(&[(10, false), (20, false)]);
        assert_eq!(s.cell(), "— (0%)");
        let s = Summary::from_outcomes(&[(10, true), (20, true), (30, false)]);
        assert_eq!(s.median_evaluations, Some(20.0));
        assert_eq!(Summary::from_outcomes(&[]).trials, 0);
    }

    #[test]
    fn unknown_names_are_config_errors() {
        let spec = ExperimentSpec::new("nope", AlgorithmConfig::default());
        assert!(matches!(run_experiment(&spec), Err(Error::Config(_))));
        assert!(matches!(
            AlgorithmConfig::named("sa"),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            resolve_problem("spring", Some(5)),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            resolve_problem("easom", Some(3)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn empty_comparison() {
        let (table, stats) = compare(&[]).unwrap();
        assert!(table.is_empty() && stats.is_empty());
        assert_eq!(table.to_csv().unwrap(), "problem,dim\n");
    }
}

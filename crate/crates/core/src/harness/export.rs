//! File exports: per-trial results (CSV / JSON lines), landscape grids and
//! nest traces. Every writer renders into memory first so a file is either
//! written whole or reports a file error with its path.

use std::io::{BufRead, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{AggregateStats, ExperimentSpec, Summary};
use crate::benchmarks;
use crate::cuckoo::{abandon_worst, initialise_population, lay_eggs, CsConfig};
use crate::error::{Error, Result};
use crate::problem::{EvalCounter, Problem};
use crate::record::RunRecord;
use crate::rng::RngState;

/// `(evaluations, success)` of one trial.
type Outcome = (u64, bool);

const STATS_NOTE: &str = "mean and std of evaluations are over successful trials only; \
the median counts failed trials as infinitely expensive";

/// Noise level used for stochastic landscapes when none is given.
pub const DEFAULT_LANDSCAPE_NOISE: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultsFormat {
    Csv,
    JsonLines,
}

impl ResultsFormat {
    /// `.jsonl` / `.json` / `.ndjson` select JSON lines; anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl" | "json" | "ndjson") => ResultsFormat::JsonLines,
            _ => ResultsFormat::Csv,
        }
    }
}

/// One CSV data row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub problem: String,
    pub algorithm: String,
    pub dim: usize,
    pub trial: usize,
    pub seed: u64,
    pub evaluations: u64,
    pub best_value: f64,
    pub success: bool,
}

/// One JSON line: the full record plus the effective configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonLine {
    pub trial: usize,
    pub config: ExperimentSpec,
    pub record: RunRecord,
}

/// A parsed results CSV.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultsFile {
    /// Comment lines without the leading `#`.
    pub metadata: Vec<String>,
    pub rows: Vec<ResultRow>,
}

impl ResultsFile {
    /// Recomputes the statistics per `(problem, algorithm, dim)`, in order
    /// of first appearance.
    pub fn summaries(&self) -> Vec<(String, String, usize, Summary)> {
        let mut groups: Vec<(String, String, usize, Vec<Outcome>)> = Vec::new();
        for r in &self.rows {
            let pos = groups
                .iter()
                .position(|g| g.0 == r.problem && g.1 == r.algorithm && g.2 == r.dim);
            let idx = pos.unwrap_or_else(|| {
                groups.push((r.problem.clone(), r.algorithm.clone(), r.dim, Vec::new()));
                groups.len() - 1
            });
            groups[idx].3.push((r.evaluations, r.success));
        }
        groups
            .into_iter()
            .map(|(p, a, d, o)| (p, a, d, Summary::from_outcomes(&o)))
            .collect()
    }
}

fn csv_bytes(w: csv::Writer<Vec<u8>>) -> Result<Vec<u8>> {
    w.into_inner()
        .map_err(|e| Error::InvalidInput(e.to_string()))
}

/// Renders results for one or more experiments.
pub fn write_results(stats: &[AggregateStats], format: ResultsFormat) -> Result<Vec<u8>> {
    match format {
        ResultsFormat::Csv => {
            let mut out = Vec::new();
            for (i, s) in stats.iter().enumerate() {
                out.extend(format!("# experiment {}\n", i + 1).bytes());
                for line in s.spec.to_config_string().lines() {
                    out.extend(format!("# {line}\n").bytes());
                }
            }
            out.extend(format!("# {STATS_NOTE}\n").bytes());
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "problem",
                "algorithm",
                "dim",
                "trial",
                "seed",
                "evaluations",
                "best_value",
                "success",
            ])?;
            let mut w = {
                // header written explicitly; rows are serialized without one
                let bytes = csv_bytes(w)?;
                csv::WriterBuilder::new()
                    .has_headers(false)
                    .from_writer(bytes)
            };
            for s in stats {
                for (trial, r) in s.records.iter().enumerate() {
                    w.serialize(ResultRow {
                        problem: s.spec.problem.clone(),
                        algorithm: s.spec.algorithm.name().to_string(),
                        dim: s.dim,
                        trial,
                        seed: r.seed,
                        evaluations: r.evaluations,
                        best_value: r.best_fitness,
                        success: r.success,
                    })?;
                }
            }
            csv_bytes(w)
        }
        ResultsFormat::JsonLines => {
            let mut out = Vec::new();
            for s in stats {
                for (trial, r) in s.records.iter().enumerate() {
                    let line = JsonLine {
                        trial,
                        config: s.spec.clone(),
                        record: r.clone(),
                    };
                    serde_json::to_writer(&mut out, &line)?;
                    out.push(b'\n');
                }
            }
            Ok(out)
        }
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::file(path, e))
}

/// Writes `stats` to `path`.
pub fn export_results(stats: &[AggregateStats], format: ResultsFormat, path: &Path) -> Result<()> {
    write_file(path, &write_results(stats, format)?)
}

/// Parses a results CSV produced by [`export_results`].
pub fn read_results_csv<R: Read>(reader: R) -> Result<ResultsFile> {
    let mut text = String::new();
    let mut reader = std::io::BufReader::new(reader);
    reader
        .read_to_string(&mut text)
        .map_err(|e| Error::InvalidInput(format!("unreadable results: {e}")))?;
    let metadata = text
        .lines()
        .filter_map(|l| l.strip_prefix('#'))
        .map(|l| l.trim().to_string())
        .collect();
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let rows = rdr
        .deserialize()
        .collect::<std::result::Result<Vec<ResultRow>, _>>()?;
    Ok(ResultsFile { metadata, rows })
}

/// Parses a JSON-lines results file; blank lines are skipped.
pub fn read_results_jsonl<R: Read>(reader: R) -> Result<Vec<JsonLine>> {
    let mut out = Vec::new();
    for (i, line) in std::io::BufReader::new(reader).lines().enumerate() {
        let line = line.map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}

fn axis(lo: f64, hi: f64, resolution: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (resolution - 1) as f64;
    (0..resolution).map(move |i| {
        if i + 1 == resolution {
            hi
        } else {
            lo + step * i as f64
        }
    })
}

/// `(x, y, f)` over a `resolution × resolution` grid spanning the box of a
/// two-dimensional benchmark (or `range` on both axes). Stochastic functions
/// are evaluated with every noise component fixed at `fixed_noise`
/// (default [`DEFAULT_LANDSCAPE_NOISE`]).
pub fn landscape_grid(
    problem: &str,
    resolution: usize,
    fixed_noise: Option<f64>,
    range: Option<(f64, f64)>,
) -> Result<Vec<[f64; 3]>> {
    let Some(entry) = benchmarks::lookup_name(problem) else {
        if let Some(p) = crate::engineering::lookup_name(problem) {
            return Err(Error::Unsupported(format!(
                "landscape needs a two-dimensional problem; {problem} has d = {}",
                p.dim()
            )));
        }
        return Err(Error::Config(format!("unknown problem `{problem}`")));
    };
    entry
        .check_dim(2)
        .map_err(|_| Error::Unsupported(format!("{problem} has no two-dimensional form")))?;
    if resolution < 2 {
        return Err(Error::InvalidParameter(format!(
            "resolution must be >= 2, got {resolution}"
        )));
    }
    let (lo, hi) = range.unwrap_or((entry.lower, entry.upper));
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidRange { lo, hi });
    }
    let eps = [fixed_noise.unwrap_or(DEFAULT_LANDSCAPE_NOISE); 2];
    let mut out = Vec::with_capacity(resolution * resolution);
    for x in axis(lo, hi, resolution) {
        for y in axis(lo, hi, resolution) {
            out.push([x, y, entry.value_with_noise(&[x, y], &eps)]);
        }
    }
    Ok(out)
}

/// Writes [`landscape_grid`] as CSV with header `x,y,f`.
pub fn export_landscape_grid(
    problem: &str,
    resolution: usize,
    fixed_noise: Option<f64>,
    range: Option<(f64, f64)>,
    path: &Path,
) -> Result<()> {
    let grid = landscape_grid(problem, resolution, fixed_noise, range)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "y", "f"])?;
    for [x, y, f] in grid {
        w.serialize((x, y, f))?;
    }
    write_file(path, &csv_bytes(w)?)
}

/// Nest coordinates at one generation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NestRow {
    pub generation: u64,
    pub nest: usize,
    pub x: f64,
    pub y: f64,
    pub fitness: f64,
}

/// Settings for nest-location snapshots: 20 nests, step
/// scale 1, `pa = 0.25`.
pub fn nest_trace_config() -> CsConfig {
    CsConfig {
        n: 20,
        alpha0: 1.0,
        pa: 0.25,
        ..CsConfig::default()
    }
}

/// Nest positions after initialization and after each of `generations`
/// generations, ignoring the stopping rule.
pub fn nest_trace(
    problem: &Problem,
    cfg: &CsConfig,
    generations: u64,
    seed: u64,
) -> Result<Vec<NestRow>> {
    if problem.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "nest trace needs a two-dimensional problem; {} has d = {}",
            problem.name(),
            problem.dim()
        )));
    }
    cfg.validate()?;
    let mut rng = RngState::new(seed);
    let mut counter = EvalCounter::new();
    let mut pop = initialise_population(problem, cfg.n, &mut rng, &mut counter)?;
    let mut rows = Vec::with_capacity(cfg.n * (generations as usize + 1));
    let snapshot = |g: u64, pop: &crate::cuckoo::NestPopulation, rows: &mut Vec<NestRow>| {
        for (i, x) in pop.nests.iter().enumerate() {
            rows.push(NestRow {
                generation: g,
                nest: i,
                x: x[0],
                y: x[1],
                fitness: pop.fitness[i],
            });
        }
    };
    snapshot(0, &pop, &mut rows);
    for g in 1..=generations {
        lay_eggs(&mut pop, problem, cfg, &mut rng, &mut counter)?;
        abandon_worst(&mut pop, problem, cfg, &mut rng, &mut counter)?;
        snapshot(g, &pop, &mut rows);
    }
    Ok(rows)
}

/// Writes [`nest_trace`] as CSV with header `generation,nest,x,y,fitness`.
pub fn export_nest_trace(
    problem: &Problem,
    cfg: &CsConfig,
    generations: u64,
    seed: u64,
    path: &Path,
) -> Result<()> {
    let rows = nest_trace(problem, cfg, generations, seed)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    write_file(path, &csv_bytes(w)?)
}

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cuckoo_core::benchmarks::benchmark_registry;
use cuckoo_core::cuckoo::CsConfig;
use cuckoo_core::harness::{
    compare, export_landscape_grid, export_nest_trace, export_results, nest_trace_config,
    resolve_problem, run_experiment, AlgorithmConfig, ExperimentSpec, ResultsFormat,
};
use cuckoo_core::{Error, Result};

/// Cuckoo Search, PSO and GA on benchmark and engineering problems.
#[derive(Debug, Parser)]
#[command(name = "cuckoo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List registered problems and algorithms.
    List,
    /// Run repeated seeded trials of one algorithm on one problem.
    Run {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        problem: Option<String>,
        #[arg(long)]
        algo: Option<String>,
        /// Results file; `.jsonl` selects JSON lines, anything else CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate several algorithms over several problems.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Comma-separated problem names.
        #[arg(long, value_delimiter = ',', required = true)]
        problems: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "cs,pso,ga")]
        algos: Vec<String>,
        /// Comparison table as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-trial results of every experiment.
        #[arg(long)]
        results: Option<PathBuf>,
    },
    /// Solve a constrained design problem and print the design.
    Solve {
        #[command(flatten)]
        common: Common,
        /// `spring` or `welded-beam`.
        #[arg(long)]
        problem: String,
        #[arg(long)]
        algo: Option<String>,
    },
    /// Export an `x,y,f` grid of a two-dimensional benchmark.
    Landscape {
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        /// Fixed noise level for stochastic functions.
        #[arg(long)]
        noise: Option<f64>,
        /// Axis range `lo,hi` overriding the problem box.
        #[arg(long, value_delimiter = ',', num_args = 2, allow_hyphen_values = true)]
        range: Option<Vec<f64>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export nest positions per generation on a two-dimensional problem.
    Trace {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 15)]
        generations: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Options shared by the experiment subcommands. Precedence: defaults,
/// then `--config`, then `--set`, then the dedicated flags.
#[derive(Debug, Args)]
struct Common {
    /// Flat `key = value` config file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Extra `key=value` overrides.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
}

impl Common {
    fn spec(&self, problem: Option<&str>, algo: Option<&str>) -> Result<ExperimentSpec> {
        self.spec_from(ExperimentSpec::default(), problem, algo)
    }

    fn spec_from(
        &self,
        mut spec: ExperimentSpec,
        problem: Option<&str>,
        algo: Option<&str>,
    ) -> Result<ExperimentSpec> {
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| Error::File {
                path: path.clone(),
                source: e,
            })?;
            spec.apply_config_str(&text)?;
        }
        // the algorithm must be chosen before its parameters are set
        if let Some(a) = algo {
            spec.set("algorithm", a)?;
        }
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("--set expects KEY=VALUE, got `{kv}`")))?;
            spec.set(k.trim(), v.trim())?;
        }
        if let Some(p) = problem {
            spec.problem = p.to_string();
        }
        if let Some(d) = self.dim {
            spec.dim = Some(d);
        }
        if let Some(r) = self.trials {
            spec.trials = r;
        }
        if let Some(s) = self.seed {
            spec.base_seed = s;
        }
        if let Some(b) = self.budget {
            spec.stop_mut().max_evaluations = b;
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn list() {
    let mut out = String::new();
    writeln!(
        out,
        "{:<3} {:<18} {:<24} {:>5}  {:<22} noise",
        "id", "name", "title", "dim", "box"
    )
    .unwrap();
    for e in benchmark_registry() {
        let bounds = format!("[{:.4}, {:.4}]", e.lower, e.upper);
        writeln!(
            out,
            "{:<3} {:<18} {:<24} {:>5}  {bounds:<22} {}",
            e.id,
            e.name,
            e.title,
            e.default_dim,
            if e.stochastic { "stochastic" } else { "-" }
        )
        .unwrap();
    }
    for name in ["spring", "welded-beam"] {
        let p = resolve_problem(name, None).expect("engineering problem");
        writeln!(
            out,
            "-   {:<18} {:<24} {:>5}  {} constraints",
            name,
            "constrained design",
            p.dim(),
            p.constraint_count()
        )
        .unwrap();
    }
    writeln!(out, "algorithms: {}", AlgorithmConfig::NAMES.join(", ")).unwrap();
    // Ignore a closed pipe, e.g. `cuckoo list | head`.
    let _ = std::io::stdout().write_all(out.as_bytes());
}

fn run(
    common: &Common,
    problem: Option<&str>,
    algo: Option<&str>,
    out: Option<&Path>,
) -> Result<()> {
    let spec = common.spec(problem, algo)?;
    let stats = run_experiment(&spec)?;
    let s = &stats.summary;
    println!(
        "{} on {} (d={}): {} over {} trials, median evaluations {}",
        spec.algorithm.name(),
        spec.problem,
        stats.dim,
        s.cell(),
        s.trials,
        s.median_evaluations
            .map_or("none".to_string(), |m| format!("{m:.0}"))
    );
    if let Some(path) = out {
        export_results(
            std::slice::from_ref(&stats),
            ResultsFormat::from_path(path),
            path,
        )?;
    }
    Ok(())
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::File {
        path: path.to_path_buf(),
        source: e,
    })
}

fn compare_cmd(
    common: &Common,
    problems: &[String],
    algos: &[String],
    out: Option<&Path>,
    results: Option<&Path>,
) -> Result<()> {
    let mut specs = Vec::new();
    for p in problems {
        for a in algos {
            specs.push(common.spec(Some(p), Some(a))?);
        }
    }
    let (table, stats) = compare(&specs)?;
    print!("{}", table.to_text());
    if let Some(path) = out {
        write(path, &table.to_csv()?)?;
    }
    if let Some(path) = results {
        export_results(&stats, ResultsFormat::from_path(path), path)?;
    }
    Ok(())
}

fn solve(common: &Common, problem: &str, algo: Option<&str>) -> Result<()> {
    let names: &[&str] = match problem {
        "spring" => &["w", "d", "L"],
        "welded-beam" => &["w", "L", "d", "h"],
        _ => {
            return Err(Error::Config(format!(
                "solve expects spring or welded-beam, got `{problem}`"
            )))
        }
    };
    let spec = common.spec_from(ExperimentSpec::solve_defaults(problem), Some(problem), algo)?;
    let p = spec.build_problem()?;
    let record = spec.algorithm.run(&p, spec.base_seed)?;
    println!("problem      {problem}");
    println!("algorithm    {}", spec.algorithm.name());
    println!("seed         {}", spec.base_seed);
    println!("evaluations  {}", record.evaluations);
    println!("best f       {:.9}", record.best_raw);
    for (n, v) in names.iter().zip(&record.best_x) {
        println!("  {n:<10} {v:.9}");
    }
    let g = p.constraint_values(&record.best_x);
    for (i, v) in g.iter().enumerate() {
        println!("  g{:<9} {v:.6e}", i + 1);
    }
    println!("feasible     {}", g.iter().all(|v| *v <= 0.0));
    Ok(())
}

fn trace(common: &Common, problem: &str, generations: u64, out: &Path) -> Result<()> {
    let base = ExperimentSpec {
        dim: Some(2),
        ..ExperimentSpec::new(problem, AlgorithmConfig::Cs(nest_trace_config()))
    };
    let spec = common.spec_from(base, Some(problem), Some("cs"))?;
    let p = spec.build_problem()?;
    let AlgorithmConfig::Cs(cfg) = &spec.algorithm else {
        unreachable!("algorithm forced to cs")
    };
    let cfg: &CsConfig = cfg;
    export_nest_trace(&p, cfg, generations, spec.base_seed, out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::List => {
            list();
            Ok(())
        }
        Command::Run {
            common,
            problem,
            algo,
            out,
        } => run(common, problem.as_deref(), algo.as_deref(), out.as_deref()),
        Command::Compare {
            common,
            problems,
            algos,
            out,
            results,
        } => compare_cmd(common, problems, algos, out.as_deref(), results.as_deref()),
        Command::Solve {
            common,
            problem,
            algo,
        } => solve(common, problem, algo.as_deref()),
        Command::Landscape {
            problem,
            resolution,
            noise,
            range,
            out,
        } => {
            let range = range.as_ref().map(|r| (r[0], r[1]));
            export_landscape_grid(problem, *resolution, *noise, range, out)
        }
        Command::Trace {
            common,
            problem,
            generations,
            out,
        } => trace(common, problem, *generations, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::File { .. } => 3,
                _ => 2,
            })
        }
    }
}

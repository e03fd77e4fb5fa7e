//! `niching`: run niching-algorithm experiments from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;

use niching::algorithms::AlgorithmKind;
use niching::harness::{emit_reports, run_experiment, AlgorithmEntry, Execution, ExperimentSpec, Metric, ResultTable};
use niching::problems::BENCHMARK_NAMES;
use niching::stats::TestKind;

const DEFAULT_OUT: &str = "results";

/// Runs algorithm x problem grids of seeded niching experiments and writes
/// raw runs, summaries, convergence traces and significance matrices.
///
/// Flags override values from the config file.
#[derive(Debug, Parser)]
#[command(name = "niching", version)]
struct Cli {
    /// Experiment file (TOML).
    #[arg(short, long)]
    config: Option<PathBuf>,

    /// Algorithm to run; repeat for several.
    #[arg(short, long = "algorithm", value_name = "NAME")]
    algorithms: Vec<AlgorithmKind>,

    /// Problem to run; repeat for several.
    #[arg(short, long = "problem", value_name = "NAME")]
    problems: Vec<String>,

    /// Seeded runs per algorithm and problem.
    #[arg(long)]
    runs: Option<usize>,

    /// Objective evaluations per run.
    #[arg(long)]
    evals: Option<u64>,

    /// Population size for every algorithm.
    #[arg(long)]
    pop_size: Option<usize>,

    /// Base seed that per-run seeds derive from.
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory [default: results].
    #[arg(short, long)]
    out: Option<PathBuf>,

    /// Grating parameter profile (TOML).
    #[arg(long)]
    grating_profile: Option<PathBuf>,

    /// Significance level for the pairwise matrices.
    #[arg(long)]
    alpha: Option<f64>,

    /// Statistical test (t, mwu, ks); repeat for several.
    #[arg(long = "test", value_name = "TEST")]
    tests: Vec<TestKind>,

    /// Worker threads for parallel runs.
    #[arg(long, conflicts_with = "sequential")]
    threads: Option<usize>,

    /// Run everything on the calling thread.
    #[arg(long)]
    sequential: bool,

    /// List algorithm and problem names, then exit.
    #[arg(long)]
    list: bool,

    /// More log output; repeat for more.
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

impl Cli {
    fn spec(&self) -> Result<ExperimentSpec> {
        let mut spec = match &self.config {
            Some(path) => ExperimentSpec::load(path)?,
            None => ExperimentSpec::default(),
        };
        if !self.algorithms.is_empty() {
            spec.algorithms = self
                .algorithms
                .iter()
                .map(|&kind| {
                    spec.algorithms
                        .iter()
                        .find(|e| e.name == kind)
                        .cloned()
                        .unwrap_or_else(|| AlgorithmEntry::new(kind))
                })
                .collect();
        }
        if !self.problems.is_empty() {
            spec.problems = self.problems.clone();
        }
        if let Some(n) = self.pop_size {
            spec.algorithms.iter_mut().for_each(|a| a.config.population_size = n);
        }
        if let Some(v) = self.runs {
            spec.runs = v;
        }
        if let Some(v) = self.evals {
            spec.max_evals = v;
        }
        if let Some(v) = self.seed {
            spec.base_seed = v;
        }
        if let Some(v) = &self.grating_profile {
            spec.grating_profile = Some(v.clone());
        }
        if let Some(v) = self.alpha {
            spec.alpha = v;
        }
        if !self.tests.is_empty() {
            spec.tests = self.tests.clone();
        }
        if let Some(v) = &self.out {
            spec.output_dir = Some(v.clone());
        }
        spec.output_dir.get_or_insert_with(|| PathBuf::from(DEFAULT_OUT));
        if spec.algorithms.is_empty() {
            bail!("no algorithms given (use --algorithm or a config file)");
        }
        if spec.problems.is_empty() {
            bail!("no problems given (use --problem or a config file)");
        }
        Ok(spec)
    }

    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel { threads: self.threads }
        }
    }
}

fn print_summary(table: &ResultTable) {
    println!("{:<16} {:<16} {:>14} {:>12} {:>10}", "problem", "algorithm", "best fitness", "peaks found", "peak ratio");
    for p in table.problems() {
        for a in table.algorithms() {
            let mean = |m| table.summary(a, p, m).map_or_else(|| "-".to_string(), |s| format!("{:.4e}", s.mean));
            let pr =
                table.summary(a, p, Metric::PeakRatio).map_or_else(|| "-".to_string(), |s| format!("{:.3}", s.mean));
            let peaks = table.summary(a, p, Metric::DistinctPeaks).map_or(0.0, |s| s.mean);
            println!("{p:<16} {a:<16} {:>14} {peaks:>12.2} {pr:>10}", mean(Metric::BestFitness));
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    if cli.list {
        println!("algorithms: {}", AlgorithmKind::ALL.map(AlgorithmKind::name).join(", "));
        println!("problems:   {}, grating", BENCHMARK_NAMES.join(", "));
        return Ok(());
    }
    let spec = cli.spec()?;
    let out = spec.output_dir.clone().expect("output directory set");
    let table = run_experiment(&spec, cli.execution()).context("experiment failed")?;
    emit_reports(&table, &spec.tests, spec.alpha, &out).context("writing reports")?;
    print_summary(&table);
    println!("results written to {}", out.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

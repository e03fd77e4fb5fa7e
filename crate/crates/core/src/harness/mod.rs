//! Multi-run experiment harness.
//!
//! An [`ExperimentSpec`] names algorithms, problems, the number of seeded
//! runs and the evaluation budget per run. [`run_experiment`] executes every
//! (algorithm, problem, run) triple, appending each finished run to
//! `runs.csv` as it completes, and returns a [`ResultTable`].
//! [`emit_reports`] turns the table into summary, raw, trace and
//! significance-matrix files.
//!
//! CSV rows in `runs.csv` and `raw/*.csv` use the columns
//! `algorithm,problem,run,seed,metric,value`.

mod report;
mod seed;
mod table;

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::algorithms::{self, AlgorithmConfig, AlgorithmKind};
use crate::ea::{EvalBudget, RngStream};
use crate::error::{Error, Result};
use crate::grating::GratingProfile;
use crate::metrics::{self, MetricSettings};
use crate::problems::{self, BoundedProblem};
use crate::stats::{TestKind, DEFAULT_ALPHA};

pub use report::{emit_reports, significance_matrices, summary_rows, RESULTS_FILE, SUMMARY_FILE};
pub use seed::run_seed;
pub use table::{CellSummary, Metric, ResultTable, RunRecord};

pub const GRATING_PROBLEM: &str = "grating";
pub const RUNS_FILE: &str = "runs.csv";

/// One algorithm column of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmEntry {
    pub name: AlgorithmKind,
    /// Column label; defaults to the algorithm name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub config: AlgorithmConfig,
}

impl AlgorithmEntry {
    pub fn new(name: AlgorithmKind) -> Self {
        Self { name, label: None, config: AlgorithmConfig::default() }
    }

    pub fn with_config(mut self, config: AlgorithmConfig) -> Self {
        self.config = config;
        self
    }

    pub fn label(&self) -> &str {
        self.label.as_deref().unwrap_or(self.name.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    pub algorithms: Vec<AlgorithmEntry>,
    /// Benchmark names, or `grating`.
    pub problems: Vec<String>,
    /// Profile for the grating problem; the built-in VLS profile when unset.
    pub grating_profile: Option<PathBuf>,
    pub runs: usize,
    pub max_evals: u64,
    pub base_seed: u64,
    /// Where run records and reports go; nothing is written when unset.
    pub output_dir: Option<PathBuf>,
    pub alpha: f64,
    pub tests: Vec<TestKind>,
    pub metrics: MetricSettings,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            algorithms: Vec::new(),
            problems: Vec::new(),
            grating_profile: None,
            runs: 50,
            max_evals: 10_000,
            base_seed: 0,
            output_dir: None,
            alpha: DEFAULT_ALPHA,
            tests: TestKind::ALL.to_vec(),
            metrics: MetricSettings::default(),
        }
    }
}

impl ExperimentSpec {
    pub fn from_toml_str(s: &str, origin: &Path) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Parse { path: origin.to_path_buf(), message: e.to_string() })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&s, path)
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::config("runs must be at least 1"));
        }
        if self.algorithms.is_empty() || self.problems.is_empty() {
            return Err(Error::config("need at least one algorithm and one problem"));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::config("alpha must lie in (0, 1)"));
        }
        let mut labels = HashSet::new();
        for a in &self.algorithms {
            a.config.validate(a.name)?;
            if self.max_evals < a.config.population_size as u64 {
                return Err(Error::config(format!(
                    "{}: max_evals {} cannot cover the initial population of {}",
                    a.label(),
                    self.max_evals,
                    a.config.population_size
                )));
            }
            if !labels.insert(a.label()) {
                return Err(Error::config(format!("duplicate algorithm label `{}`", a.label())));
            }
        }
        let mut seen = HashSet::new();
        for p in &self.problems {
            if p != GRATING_PROBLEM && problems::by_name(p).is_none() {
                return Err(Error::config(format!("unknown problem `{p}`")));
            }
            if !seen.insert(p) {
                return Err(Error::config(format!("duplicate problem `{p}`")));
            }
        }
        Ok(())
    }

    /// Builds every problem up front so configuration errors surface before
    /// any evaluation.
    pub fn resolve_problems(&self) -> Result<Vec<BoundedProblem>> {
        self.problems
            .iter()
            .map(|name| match name.as_str() {
                GRATING_PROBLEM => {
                    let profile = match &self.grating_profile {
                        Some(path) => GratingProfile::load(path)?,
                        None => GratingProfile::vls_default(),
                    };
                    profile.synthetic_problem()
                }
                other => problems::by_name(other).ok_or_else(|| Error::config(format!("unknown problem `{other}`"))),
            })
            .collect()
    }
}

/// How runs are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// Runs spread over a rayon pool (`None` = rayon's default size). Falls
    /// back to sequential execution without the `parallel` feature.
    Parallel { threads: Option<usize> },
    #[default]
    Sequential,
}

impl Execution {
    pub fn parallel() -> Self {
        Execution::Parallel { threads: None }
    }
}

struct Task {
    algorithm: usize,
    problem: usize,
    run: usize,
    seed: u64,
}

fn run_task(spec: &ExperimentSpec, problems: &[BoundedProblem], task: &Task) -> Result<RunRecord> {
    let entry = &spec.algorithms[task.algorithm];
    let problem = &problems[task.problem];
    let result = algorithms::run(
        entry.name,
        problem,
        &entry.config,
        EvalBudget::new(spec.max_evals),
        RngStream::new(task.seed),
    )?;
    assert!(result.evals_used <= spec.max_evals, "budget overrun");
    let report = metrics::report(&result.final_population, problem, &spec.metrics);
    log::debug!(
        "{} on {} run {}: {} evals, best {:?}",
        entry.label(),
        problem.name(),
        task.run,
        result.evals_used,
        report.best_fitness
    );
    Ok(RunRecord {
        algorithm: entry.label().to_string(),
        problem: problem.name().to_string(),
        run: task.run,
        seed: task.seed,
        evals_used: result.evals_used,
        metrics: report,
        trace: result.trace,
    })
}

/// Serializes run records into `runs.csv` as runs finish.
struct RunWriter {
    path: PathBuf,
    writer: csv::Writer<fs::File>,
}

impl RunWriter {
    fn create(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let path = dir.join(RUNS_FILE);
        let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
        let mut writer = csv::Writer::from_writer(file);
        writer.write_record(table::CSV_HEADER)?;
        writer.flush().map_err(|e| Error::io(&path, e))?;
        Ok(Self { path, writer })
    }

    fn append(&mut self, record: &RunRecord) -> Result<()> {
        for row in record.rows() {
            self.writer.write_record(&row)?;
        }
        self.writer.flush().map_err(|e| Error::io(&self.path, e))
    }
}

/// Runs the whole grid. Each run's metrics are appended to `runs.csv` under
/// `output_dir` (when set) before the next aggregation step.
pub fn run_experiment(spec: &ExperimentSpec, execution: Execution) -> Result<ResultTable> {
    spec.validate()?;
    let problems = spec.resolve_problems()?;
    let writer = match &spec.output_dir {
        Some(dir) => Some(Mutex::new(RunWriter::create(dir)?)),
        None => None,
    };

    let mut tasks = Vec::new();
    for (ai, entry) in spec.algorithms.iter().enumerate() {
        for (pi, problem) in problems.iter().enumerate() {
            for run in 0..spec.runs {
                let seed = run_seed(spec.base_seed, entry.label(), problem.name(), run);
                tasks.push(Task { algorithm: ai, problem: pi, run, seed });
            }
        }
    }
    log::info!("running {} tasks", tasks.len());

    let execute = |task: &Task| -> Result<RunRecord> {
        let record = run_task(spec, &problems, task)?;
        if let Some(w) = &writer {
            w.lock().expect("run writer poisoned").append(&record)?;
        }
        Ok(record)
    };

    let records: Vec<RunRecord> = match execution {
        Execution::Sequential => tasks.iter().map(execute).collect::<Result<_>>()?,
        Execution::Parallel { threads } => run_parallel(&tasks, threads, &execute)?,
    };

    Ok(ResultTable::new(
        spec.algorithms.iter().map(|a| a.label().to_string()).collect(),
        problems.iter().map(|p| p.name().to_string()).collect(),
        spec.runs,
        records,
    ))
}

#[cfg(feature = "parallel")]
fn run_parallel<F>(tasks: &[Task], threads: Option<usize>, execute: &F) -> Result<Vec<RunRecord>>
where
    F: Fn(&Task) -> Result<RunRecord> + Sync,
{
    use rayon::prelude::*;

    let go = || tasks.par_iter().map(execute).collect::<Result<Vec<_>>>();
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::config(format!("thread pool: {e}")))?
            .install(go),
        None => go(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_parallel<F>(tasks: &[Task], _threads: Option<usize>, execute: &F) -> Result<Vec<RunRecord>>
where
    F: Fn(&Task) -> Result<RunRecord> + Sync,
{
    tasks.iter().map(execute).collect()
}

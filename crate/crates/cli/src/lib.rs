//! Batch front-end: load a model file, run its tasks and collect reports.

pub mod build;
pub mod model;
pub mod tasks;

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use domdim::exactla::{Field, Fp};

use build::{build, BuildError};
use model::{Diagnostic, LoadedModel};
use tasks::{run_task, RunOptions, TaskResult};

pub const DEFAULT_PRIME: u64 = 101;
pub const DEFAULT_BOUND: usize = 25;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Primes the binary is compiled for.
pub const SUPPORTED_PRIMES: [u64; 4] = [2, 3, 101, 103];

#[derive(Debug, Clone)]
pub struct Options {
    /// Overrides the model's prime; `None` uses the model's, or the default.
    pub prime: Option<u64>,
    pub bound: usize,
    pub seed: u64,
    pub fail_fast: bool,
    /// Only run tasks whose label or kind equals this.
    pub task: Option<String>,
}

impl Default for Options {
    fn default() -> Self {
        Options { prime: None, bound: DEFAULT_BOUND, seed: domdim::DEFAULT_SEED, fail_fast: false, task: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub index: usize,
    pub name: String,
    pub task: String,
    #[serde(flatten)]
    pub result: TaskResult,
}

/// Machine-readable result of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub prime: u64,
    pub bound: usize,
    pub seed: String,
    pub tasks: Vec<TaskRecord>,
    pub exit_code: i32,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// A run that stopped before any task executed.
#[derive(Debug, Clone)]
pub struct RunError {
    pub exit_code: i32,
    pub diagnostic: Diagnostic,
}

impl From<BuildError> for RunError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Invalid(d) => RunError { exit_code: EXIT_INPUT, diagnostic: d },
            BuildError::Guard(d) => RunError { exit_code: EXIT_GUARD, diagnostic: d },
        }
    }
}

fn input_error(message: impl Into<String>) -> RunError {
    RunError {
        exit_code: EXIT_INPUT,
        diagnostic: Diagnostic { line: None, column: None, entity: None, message: message.into() },
    }
}

pub fn parse_seed(s: &str) -> Result<u64, String> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|e| format!("seed must be hexadecimal: {e}"))
}

pub fn run_file(path: &Path, opts: &Options) -> Result<RunReport, RunError> {
    let loaded = model::load(path).map_err(|d| RunError { exit_code: EXIT_INPUT, diagnostic: d })?;
    run_model(&loaded, opts)
}

pub fn run_model(loaded: &LoadedModel, opts: &Options) -> Result<RunReport, RunError> {
    let prime = match (opts.prime, loaded.model.prime) {
        (Some(p), Some(q)) if p != q => {
            return Err(input_error(format!("--prime {p} disagrees with the model's prime {q}")));
        }
        (Some(p), _) | (None, Some(p)) => p,
        (None, None) => DEFAULT_PRIME,
    };
    macro_rules! dispatch {
        ($($p:literal),*) => {
            match prime {
                $($p => run_with::<Fp<$p>>(loaded, opts, prime),)*
                _ => Err(input_error(format!(
                    "prime {prime} is not supported; choose one of {:?}",
                    SUPPORTED_PRIMES
                ))),
            }
        };
    }
    dispatch!(2, 3, 101, 103)
}

fn run_with<F: Field>(loaded: &LoadedModel, opts: &Options, prime: u64) -> Result<RunReport, RunError> {
    let w = build::<F>(loaded)?;
    let selected: Vec<(usize, String, &model::TaskDecl)> = loaded
        .model
        .tasks
        .iter()
        .enumerate()
        .map(|(i, t)| (i, t.name.clone().unwrap_or_else(|| t.kind.kind_name().to_string()), t))
        .filter(|(_, name, t)| opts.task.as_ref().is_none_or(|f| f == name || f == t.kind.kind_name()))
        .collect();
    if let Some(f) = &opts.task {
        if selected.is_empty() {
            return Err(input_error(format!("no task matches {f:?}")));
        }
    }
    let ropts = RunOptions { bound: opts.bound, seed: opts.seed };
    let record = |(i, name, t): &(usize, String, &model::TaskDecl)| TaskRecord {
        index: *i,
        name: name.clone(),
        task: t.kind.kind_name().to_string(),
        result: run_task(&w, t, ropts),
    };
    let mut records: Vec<TaskRecord> = Vec::with_capacity(selected.len());
    if opts.fail_fast {
        for s in &selected {
            let r = record(s);
            let stop = r.result.exit_code() != EXIT_PASS;
            records.push(r);
            if stop {
                break;
            }
        }
    } else {
        let workers = std::thread::available_parallelism().map_or(1, usize::from).min(selected.len()).max(1);
        let next = AtomicUsize::new(0);
        let done = Mutex::new(Vec::with_capacity(selected.len()));
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let k = next.fetch_add(1, Ordering::Relaxed);
                    let Some(s) = selected.get(k) else { break };
                    let r = record(s);
                    done.lock().expect("no worker panicked").push(r);
                });
            }
        });
        records = done.into_inner().expect("no worker panicked");
        records.sort_by_key(|r| r.index);
    }
    let exit_code = records.iter().map(|r| r.result.exit_code()).max().unwrap_or(EXIT_PASS);
    Ok(RunReport { prime, bound: opts.bound, seed: format!("{:#x}", opts.seed), tasks: records, exit_code })
}

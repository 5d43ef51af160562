use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use domdim_cli::{parse_seed, run_file, Options, DEFAULT_BOUND, EXIT_INPUT};

/// Runs the tasks of a model file and reports the verdicts.
#[derive(Debug, Parser)]
#[command(name = "domdim", version)]
struct Args {
    /// Model file (JSON).
    #[arg(long)]
    model: PathBuf,
    /// Prime field characteristic [default: the model's, else 101].
    #[arg(long)]
    prime: Option<u64>,
    /// Step bound for resolutions, orbits and catalogs.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: usize,
    /// Seed for randomized searches, in hexadecimal.
    #[arg(long, default_value = "0xD7", value_parser = parse_seed)]
    seed: u64,
    /// Stop after the first task that does not pass.
    #[arg(long)]
    fail_fast: bool,
    /// Write the machine-readable report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Run only tasks with this label or kind.
    #[arg(long)]
    task: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options { prime: args.prime, bound: args.bound, seed: args.seed, fail_fast: args.fail_fast, task: args.task };
    let report = match run_file(&args.model, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}: {}", args.model.display(), e.diagnostic);
            return ExitCode::from(e.exit_code as u8);
        }
    };
    for t in &report.tasks {
        println!("[{:>2}] {:<28} {}", t.index + 1, t.name, t.result.status());
    }
    let passed = report.tasks.iter().filter(|t| t.result.exit_code() == 0).count();
    println!("{passed}/{} tasks ok (prime {}, bound {}, seed {})", report.tasks.len(), report.prime, report.bound, report.seed);
    if let Some(path) = &args.report {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    }
    ExitCode::from(report.exit_code as u8)
}

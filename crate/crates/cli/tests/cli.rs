use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use domdim_cli::tasks::TaskResult;
use domdim_cli::{run_file, Options, RunReport, EXIT_FAIL, EXIT_GUARD, EXIT_INPUT, EXIT_PASS};

fn crate_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn domdim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domdim")).args(args).output().expect("binary runs")
}

fn run(model: &str, extra: &[&str]) -> (i32, String, String) {
    let path = crate_path(model);
    let mut args = vec!["--model", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = domdim(&args);
    (
        out.status.code().expect("exit code"),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn statuses(r: &RunReport) -> Vec<(String, String)> {
    r.tasks.iter().map(|t| (t.name.clone(), t.result.status())).collect()
}

#[test]
fn aus2_model_passes_and_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let (code, stdout, _) = run("models/aus2.json", &["--report", report.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS, "{stdout}");
    assert!(stdout.contains("13/13 tasks ok"), "{stdout}");
    let text = std::fs::read_to_string(&report).unwrap();
    let parsed = RunReport::from_json(&text).unwrap();
    assert_eq!(parsed.to_json(), text);
    assert_eq!(parsed.exit_code, EXIT_PASS);
    assert!(parsed.tasks.iter().all(|t| t.result.status() == "pass"));
    let direct = run_file(&crate_path("models/aus2.json"), &Options::default()).unwrap();
    assert_eq!(direct, parsed);
}

#[test]
fn tensor_model_passes() {
    let (code, stdout, _) = run("models/tensor.json", &[]);
    assert_eq!(code, EXIT_PASS, "{stdout}");
}

#[test]
fn bound_one_gives_bound_exceeded_orbits() {
    let opts = Options { bound: 1, task: Some("dynkin_criterion".into()), ..Options::default() };
    let r = run_file(&crate_path("models/tensor.json"), &opts).unwrap();
    assert_eq!(r.tasks.len(), 5);
    for t in &r.tasks {
        let TaskResult::Verified { report } = &t.result else { panic!("{t:?}") };
        let traces = report.witness("orbit traces").unwrap().detail.as_array().unwrap();
        assert!(traces.iter().any(|o| o["outcome"]["kind"] == "bound_exceeded"), "{}", t.name);
    }
    // closure needs two steps over A2, so the Dynkin verdict cannot be confirmed at bound 1
    assert_eq!(r.tasks[0].result.status(), "fail");
    assert_eq!(r.exit_code, EXIT_FAIL);
}

#[test]
fn seed_does_not_change_verdicts() {
    for model in ["models/aus2.json", "models/tensor.json"] {
        let base = run_file(&crate_path(model), &Options::default()).unwrap();
        for seed in [0x1, 0xBEEF] {
            let other = run_file(&crate_path(model), &Options { seed, ..Options::default() }).unwrap();
            assert_eq!(statuses(&other), statuses(&base), "{model} with seed {seed:#x}");
        }
    }
}

#[test]
fn planted_failures_map_to_exit_codes() {
    let (code, _, stderr) = run("tests/fixtures/nonassociative.json", &[]);
    assert_eq!(code, EXIT_INPUT);
    assert!(stderr.contains("broken") && stderr.contains("associativity fails on basis triple (u, u"), "{stderr}");
    assert!(stderr.contains("line 4"), "{stderr}");

    let (code, _, stderr) = run("tests/fixtures/unknown_reference.json", &[]);
    assert_eq!(code, EXIT_INPUT);
    assert!(stderr.contains("dangling") && stderr.contains("\"missing\""), "{stderr}");

    let (code, _, stderr) = run("tests/fixtures/malformed.json", &[]);
    assert_eq!(code, EXIT_INPUT);
    assert!(stderr.contains("line 7"), "{stderr}");

    let (code, stdout, _) = run("tests/fixtures/failing_check.json", &[]);
    assert_eq!(code, EXIT_FAIL);
    assert!(stdout.contains("1/3 tasks ok"), "{stdout}");

    let (code, stdout, _) = run("tests/fixtures/wrong_hypothesis.json", &[]);
    assert_eq!(code, EXIT_INPUT);
    assert!(stdout.contains("hypothesis"), "{stdout}");

    let (code, _, stderr) = run("tests/fixtures/small_prime.json", &[]);
    assert_eq!(code, EXIT_GUARD);
    assert!(stderr.contains("p = 3"), "{stderr}");
}

#[test]
fn fail_fast_stops_at_the_first_failure() {
    let r = run_file(&crate_path("tests/fixtures/failing_check.json"), &Options { fail_fast: true, ..Options::default() })
        .unwrap();
    assert_eq!(r.tasks.len(), 1);
    assert_eq!(r.exit_code, EXIT_FAIL);
}

#[test]
fn task_filter_and_flags() {
    let (code, stdout, _) = run("models/aus2.json", &["--task", "aus2 invariants"]);
    assert_eq!(code, EXIT_PASS);
    assert!(stdout.contains("1/1 tasks ok"), "{stdout}");
    let (code, _, stderr) = run("models/aus2.json", &["--task", "no such task"]);
    assert_eq!(code, EXIT_INPUT, "{stderr}");
    let (code, _, stderr) = run("models/aus2.json", &["--prime", "103"]);
    assert_eq!(code, EXIT_INPUT, "{stderr}");
    let (code, _, _) = run("models/tensor.json", &["--prime", "103", "--task", "A2", "--seed", "0x2a"]);
    assert_eq!(code, EXIT_PASS);
    let (code, _, _) = run("models/tensor.json", &["--prime", "97"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn failed_reports_carry_counterexamples() {
    let r = run_file(&crate_path("tests/fixtures/failing_check.json"), &Options::default()).unwrap();
    for t in &r.tasks {
        if let TaskResult::Verified { report } = &t.result {
            assert!(report.is_well_formed(), "{}", t.name);
        }
    }
    let TaskResult::Verified { report } = &r.tasks[2].result else { panic!() };
    let cx = report.counterexample.as_ref().unwrap();
    assert_eq!(cx["check"], "dominant_dimension");
    assert_eq!(cx["detail"]["computed"], "1");
}

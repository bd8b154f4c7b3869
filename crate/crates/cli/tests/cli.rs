//! End-to-end runs of the `fsdem` binary in local mode.

use std::path::Path;
use std::process::{Command, Output};

fn fsdem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsdem"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn dummy_then_sweep_on_the_written_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("wealth.csv");
    let out = fsdem(&[
        "dummy",
        "--n",
        "60",
        "--seed",
        "7",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(text.lines().count(), 61);

    let report_dir = dir.path().join("reports");
    let out = fsdem(&[
        "sweep",
        "--data",
        csv_path.to_str().unwrap(),
        "--selector",
        "info_gain",
        "--measure",
        "accuracy",
        "--a",
        "1",
        "--b",
        "6",
        "--stride",
        "1",
        "--seed",
        "11",
        "--out",
        report_dir.to_str().unwrap(),
    ]);
    let report = stdout_json(&out);
    assert_eq!(report["dataset_id"], "wealth");
    assert_eq!(report["selector_id"], "info_gain");
    assert_eq!(report["measure_id"], "accuracy");
    assert_eq!(report["curve"].as_array().unwrap().len(), 6);
    assert_eq!(report["stride"], 1);
    assert!(report["fsdem"].as_f64().unwrap() > 0.0);
    assert!(report.get("wall_time_ms").is_some());
    assert!(report_dir.join("wealth__info_gain__accuracy.json").exists());
    assert!(report_dir.join("wealth__info_gain__accuracy__curve.csv").exists());
    assert!(report_dir
        .join("wealth__info_gain__accuracy__derivative.csv")
        .exists());
}

#[test]
fn stability_on_the_generated_dataset() {
    let out = fsdem(&[
        "stability",
        "--data",
        "wealth",
        "--selector",
        "chi2",
        "--repeats",
        "4",
        "--noise",
        "0.0",
        "--k",
        "3",
        "--seed",
        "2",
    ]);
    let report = stdout_json(&out);
    assert_eq!(report["nogueira"], 1.0);
    assert_eq!(report["kuncheva"], 1.0);
    assert_eq!(report["k"], 3);
}

#[test]
fn benchmark_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("bench");
    let config = serde_json::json!({
        "datasets": [{"wealth": {"n": 40}}],
        "selectors": [{"selector_id": "random"}, {"selector_id": "info_gain"}],
        "evaluators": [{"measure_id": "accuracy"}],
        "stride": 1,
        "repeats": 0,
        "output_dir": out_dir,
        "master_seed": 5
    });
    let config_path = dir.path().join("config.json");
    std::fs::write(&config_path, serde_json::to_vec_pretty(&config).unwrap()).unwrap();

    let out = fsdem(&["benchmark", "--config", config_path.to_str().unwrap()]);
    let doc = stdout_json(&out);
    assert_eq!(doc["summary"]["total_runs"], 2);
    assert_eq!(doc["summary"]["failed_runs"], 0);
    assert!(out_dir.join("summary.csv").exists());
    assert!(out_dir.join("wealth__random__accuracy.json").exists());
    assert!(out_dir.join("wealth__info_gain__accuracy.json").exists());
}

#[test]
fn exit_codes_follow_the_contract() {
    // Unknown flag: usage error, exit 1.
    let out = fsdem(&["sweep", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));

    // Unknown selector: usage error, exit 1.
    let out = fsdem(&["sweep", "--data", "wealth", "--selector", "bogus"]);
    assert_eq!(out.status.code(), Some(1));

    // Missing data file: data error, exit 2.
    let out = fsdem(&[
        "sweep",
        "--data",
        "/nonexistent/never.csv",
        "--selector",
        "random",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Benchmark with a missing dataset: partial failure, exit 3.
    let dir = tempfile::tempdir().unwrap();
    let config = serde_json::json!({
        "datasets": [
            {"wealth": {"n": 40}},
            {"path": "/nonexistent/never.csv"}
        ],
        "selectors": [{"selector_id": "random"}],
        "evaluators": [{"measure_id": "accuracy"}],
        "repeats": 0,
        "output_dir": dir.path().join("bench"),
        "master_seed": 1
    });
    let config_path = dir.path().join("config.json");
    std::fs::write(&config_path, serde_json::to_vec_pretty(&config).unwrap()).unwrap();
    let out = fsdem(&["benchmark", "--config", config_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn help_lists_the_subcommands() {
    let out = fsdem(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for subcommand in ["sweep", "stability", "benchmark", "dummy", "serve"] {
        assert!(text.contains(subcommand), "help is missing {subcommand}");
    }
}

#[test]
fn rejects_unreachable_server() {
    let out = fsdem(&[
        "--server",
        "http://127.0.0.1:1",
        "stability",
        "--data",
        "wealth",
        "--selector",
        "random",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(Path::new(env!("CARGO_BIN_EXE_fsdem")).exists());
}

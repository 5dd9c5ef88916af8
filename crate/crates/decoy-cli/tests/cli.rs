//! Black-box tests of the `decoy` binary: exit codes, JSON shapes, and
//! deterministic outputs.

use std::path::Path;
use std::process::{Command, Output};

fn decoy(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decoy"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn stderr_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stderr).expect("stderr is JSON")
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn print_config_shows_every_default() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoy(&["--print-config"], dir.path());
    let config = stdout_json(&out);
    assert_eq!(config["modes"], 1);
    assert_eq!(config["digits"], 12);
    assert_eq!(config["arithmetic"], "float");
    assert_eq!(config["schedule"]["equal_spacing"], 2);
    assert_eq!(config["sweep"]["points"], 40);
    assert!(config["gains_file"].is_null());
}

#[test]
fn coeffs_default_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoy(&["coeffs"], dir.path());
    let doc = stdout_json(&out);
    assert_eq!(doc["lambda"][0], -3.0);
    assert_eq!(doc["lambda"][1], 4.0);
    assert_eq!(doc["lambda"][2], 1.0);
    assert!((doc["delta"].as_f64().unwrap() - 0.123396745659).abs() < 1e-9);
    assert!((doc["noise_factor"].as_f64().unwrap() - 26.0_f64.sqrt()).abs() < 1e-9);
}

#[test]
fn coeffs_exact_matches_goldens() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoy(&["--exact", "--digits", "30", "coeffs"], dir.path());
    let doc = stdout_json(&out);
    assert_eq!(doc["arithmetic"], "exact");
    assert_eq!(doc["delta"], "0.123396745658532647965684320096");
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    // Zero probes.
    let bad = write(dir.path(), "bad.json", r#"{"schedule": {"equal_spacing": 0}}"#);
    let out = decoy(&["--config", &bad, "coeffs"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["kind"], "config");
    // Malformed JSON.
    let broken = write(dir.path(), "broken.json", "{nope");
    let out = decoy(&["--config", &broken, "coeffs"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    // Unknown field.
    let unknown = write(dir.path(), "unknown.json", r#"{"nonsense": 1}"#);
    let out = decoy(&["--config", &unknown, "coeffs"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn estimate_from_gain_file() {
    let dir = tempfile::tempdir().unwrap();
    let e = std::f64::consts::E;
    let gains = write(
        dir.path(),
        "gains.json",
        &format!(
            r#"[{{"intensities": [0.0], "clicks": null, "pulses": null, "a_value": 0.0}},
                {{"intensities": [1.0], "clicks": null, "pulses": null, "a_value": {}}}]"#,
            e - 1.0
        ),
    );
    let config = write(
        dir.path(),
        "config.json",
        &format!(r#"{{"schedule": {{"intensities": [1.0]}}, "gains_file": "{gains}"}}"#),
    );
    let out = decoy(&["--config", &config, "estimate"], dir.path());
    let doc = stdout_json(&out);
    assert!((doc["estimate"].as_f64().unwrap() - (e - 1.0)).abs() < 1e-12);
    assert!((doc["raw_interval"][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    // Exact gains: no statistical term.
    assert_eq!(doc["budget"]["stat_error_estimate"], 0.0);
}

#[test]
fn missing_gain_entries_exit_3_with_the_tuples() {
    let dir = tempfile::tempdir().unwrap();
    let gains = write(
        dir.path(),
        "gains.json",
        r#"[{"intensities": [0.5], "clicks": null, "pulses": null, "a_value": 0.2}]"#,
    );
    let config = write(
        dir.path(),
        "config.json",
        &format!(r#"{{"schedule": {{"intensities": [0.5, 1.0]}}, "gains_file": "{gains}"}}"#),
    );
    let out = decoy(&["--config", &config, "estimate"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let err = stderr_json(&out);
    assert_eq!(err["kind"], "missing_data");
    let missing = err["missing"].as_array().unwrap();
    assert_eq!(missing.len(), 2); // vacuum and 1.0 are absent
}

#[test]
fn empty_gain_file_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let gains = write(dir.path(), "gains.json", "[]");
    let config = write(
        dir.path(),
        "config.json",
        &format!(r#"{{"schedule": {{"intensities": [1.0]}}, "gains_file": "{gains}"}}"#),
    );
    let out = decoy(&["--config", &config, "estimate"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn two_mode_coincidence_estimate() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "config.json",
        r#"{
            "schedule": {"intensities": [1.0]},
            "modes": 2,
            "yield_model": {"kind": "separable", "modes": [
                {"kind": "loss_dark", "transmittance": 1.0, "dark_count": 0.0},
                {"kind": "loss_dark", "transmittance": 1.0, "dark_count": 0.0}
            ]},
            "pulses": "exact"
        }"#,
    );
    let out = decoy(&["--config", &config, "estimate"], dir.path());
    let doc = stdout_json(&out);
    let e = std::f64::consts::E;
    assert!((doc["estimate"].as_f64().unwrap() - (e - 1.0) * (e - 1.0)).abs() < 1e-9);
    assert!((doc["raw_interval"][0].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn simulate_then_estimate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "config.json",
        r#"{
            "schedule": {"intensities": [0.5, 1.0]},
            "pulses": {"per_setting": 20000},
            "seed": 7
        }"#,
    );
    let run = |name: &str| {
        let out_path = dir.path().join(name);
        let out = decoy(
            &["--config", &config, "--output", out_path.to_str().unwrap(), "simulate"],
            dir.path(),
        );
        assert!(out.status.success());
        std::fs::read(out_path).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));

    // Seed override changes the record.
    let out_path = dir.path().join("c.json");
    let out = decoy(
        &[
            "--config",
            &config,
            "--seed",
            "8",
            "--output",
            out_path.to_str().unwrap(),
            "simulate",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert_ne!(std::fs::read(dir.path().join("a.json")).unwrap(), std::fs::read(out_path).unwrap());
}

#[test]
fn reproduce_fig3_and_fig5() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoy(&["reproduce", "--figure", "fig3"], dir.path());
    let doc = stdout_json(&out);
    let fit = &doc["series"][0]["fit"];
    assert!((fit["slope"].as_f64().unwrap() - 0.67).abs() < 0.08);
    let csv = std::fs::read_to_string(dir.path().join("fig3.csv")).unwrap();
    assert!(csv.starts_with("# decoy-csv v1\nprobe_count,noise_factor,model\n"));
    assert_eq!(csv.lines().count(), 12);

    let out = decoy(&["reproduce", "--figure", "fig5"], dir.path());
    let doc = stdout_json(&out);
    assert!(doc["series"][0]["fit"]["slope"].as_f64().unwrap() > 0.0);
}

#[test]
fn reproduce_multimode_figures() {
    let dir = tempfile::tempdir().unwrap();
    for figure in ["fig6", "fig7"] {
        let out = decoy(&["reproduce", "--figure", figure], dir.path());
        let doc = stdout_json(&out);
        assert_eq!(doc["series"].as_array().unwrap().len(), 4);
    }
    let csv = std::fs::read_to_string(dir.path().join("fig6.csv")).unwrap();
    assert!(csv.contains("n=4"));
}

#[test]
fn unknown_figure_exits_2_and_bad_sweep_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoy(&["reproduce", "--figure", "fig99"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    let config = write(
        dir.path(),
        "sweep.json",
        r#"{"sweep": {"budget_min": 100.0, "budget_max": 10.0, "points": 5}}"#,
    );
    let out = decoy(&["--config", &config, "reproduce", "--figure", "fig4"], dir.path());
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(stderr_json(&out)["kind"], "infeasible");
}

#[test]
fn optimize_reports_and_rejects_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let out = decoy(&["optimize"], dir.path());
    let doc = stdout_json(&out);
    assert!(doc["optimal_probe_count"].as_u64().unwrap() >= 1);

    let config = write(dir.path(), "tiny.json", r#"{"budget": 1.0}"#);
    let out = decoy(&["--config", &config, "optimize"], dir.path());
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reproduce_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path_a = dir.path().join("a.csv");
    let path_b = dir.path().join("b.csv");
    for (path, _) in [(&path_a, 0), (&path_b, 1)] {
        let out = decoy(
            &["reproduce", "--figure", "fig4", "--output", path.to_str().unwrap()],
            dir.path(),
        );
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(path_a).unwrap(), std::fs::read(path_b).unwrap());
}

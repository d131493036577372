//! End-to-end tests of the frac-gelfand binary: exit codes, file formats,
//! configuration precedence.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frac-gelfand"))
}

#[test]
fn constants_prints_twelve_digits_and_exits_zero() {
    let out = bin()
        .args(["constants", "--n", "2", "--s", "0.5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("lambda_ns    = 1.000000000000"),
        "got: {text}"
    );
}

#[test]
fn bad_s_exits_two_with_message() {
    let out = bin()
        .args(["constants", "--n", "3", "--s", "1.2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("s must lie in (0,1)"), "stderr: {err}");
}

#[test]
fn boundary_roots_and_all_stable() {
    let out = bin()
        .args(["boundary", "--n", "8", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let root = v["outcome"]["root"].as_f64().unwrap();
    assert!((root - 0.28206).abs() <= 5e-5, "root {root}");

    let out = bin()
        .args(["boundary", "--n", "9", "--format", "json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let root = v["outcome"]["root"].as_f64().unwrap();
    assert!((root - 0.63237).abs() <= 5e-5, "root {root}");

    let out = bin().args(["boundary", "--n", "10"]).output().unwrap();
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("stable for all s"));
}

#[test]
fn phase_diagram_csv_round_trip() {
    let dir = std::env::temp_dir().join("fgl-cli-test-phase");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("phase.csv");
    let out = bin()
        .args([
            "phase-diagram",
            "--n-lo",
            "3",
            "--n-hi",
            "12",
            "--s-steps",
            "9",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let body = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = body.trim_end().lines().collect();
    assert_eq!(lines[0], "n,s,margin,verdict");
    assert_eq!(lines.len(), 91, "header + 90 data rows");
    for line in &lines[1..] {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 4);
        let n: u32 = cols[0].parse().unwrap();
        let _s: f64 = cols[1].parse().unwrap();
        let margin: f64 = cols[2].parse().unwrap();
        if n <= 7 {
            assert_eq!(cols[3], "unstable", "row: {line}");
            assert!(margin > 0.0);
        }
        if n >= 10 {
            assert_eq!(cols[3], "stable", "row: {line}");
            assert!(margin < 0.0);
        }
    }
    // file re-read equals the stdout emission of the same grid
    let out = bin()
        .args(["phase-diagram", "--n-lo", "3", "--n-hi", "12", "--s-steps", "9"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim_end(), body.trim_end());
}

#[test]
fn verify_fraclap_report_schema_and_stability() {
    let dir = std::env::temp_dir().join("fgl-cli-test-verify");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = bin()
        .args([
            "verify", "--suite", "fraclap", "--n", "3", "--s", "0.5", "--format", "json",
            "--out", path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "exit: {:?}", out.status.code());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["suite"], "fraclap");
    assert_eq!(report["pass"], true);
    assert_eq!(report["params"]["n"], 3);
    assert!(report["checks"].as_array().unwrap().len() >= 5);

    // byte-stable for fixed inputs and seed, modulo the wall-clock column
    let strip = |v: &serde_json::Value| {
        let mut v = v.clone();
        for c in v["checks"].as_array_mut().unwrap() {
            c.as_object_mut().unwrap().remove("seconds");
        }
        v.to_string()
    };
    let out2 = bin()
        .args(["verify", "--suite", "fraclap", "--n", "3", "--s", "0.5", "--format", "json"])
        .output()
        .unwrap();
    let report2: serde_json::Value = serde_json::from_slice(&out2.stdout).unwrap();
    assert_eq!(strip(&report), strip(&report2));
}

#[test]
fn verify_unknown_suite_exits_two() {
    let out = bin()
        .args(["verify", "--suite", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seed_precedence_env_and_flag() {
    let out = bin()
        .args(["verify", "--suite", "fraclap", "--format", "json"])
        .env("FGL_SEED", "7")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["seed"], 7);

    let out = bin()
        .args(["verify", "--suite", "fraclap", "--format", "json", "--seed", "11"])
        .env("FGL_SEED", "7")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["seed"], 11, "flag must beat the environment");
}

#[test]
fn config_file_supplies_defaults() {
    let dir = std::env::temp_dir().join("fgl-cli-test-config");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("fgl.conf");
    std::fs::write(&cfg, "# comment\nseed = 123\nrel_tol = 1e-8\n").unwrap();
    let out = bin()
        .args([
            "verify", "--suite", "fraclap", "--format", "json", "--config",
            cfg.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["seed"], 123);

    let bad = dir.join("bad.conf");
    std::fs::write(&bad, "rel_tol: 1e-8\n").unwrap();
    let out = bin()
        .args(["verify", "--suite", "fraclap", "--config", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_env_value_exits_two() {
    let out = bin()
        .args(["verify", "--suite", "fraclap"])
        .env("FGL_REL_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

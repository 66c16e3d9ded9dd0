//! End-to-end checks of the binary: exit codes, output formats, parse-back,
//! and byte-level reproducibility.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lambda_eit_cli::output::{parse_columns, parse_kv};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lambda-eit"));
    // Pin the manifest timestamp so outputs are byte-reproducible.
    cmd.env("SOURCE_DATE_EPOCH", "1700000000");
    cmd
}

fn repo_config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn reproduce_paper_passes_at_default_tolerance() {
    let out = bin().arg("reproduce-paper").output().unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("delta_n"));
    assert!(text.contains("n2_cm2_per_w"));
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn reproduce_paper_fails_at_zero_tolerance() {
    let out = bin()
        .args(["reproduce-paper", "--tolerance", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("acceptance failure"));
}

#[test]
fn respond_emits_parseable_kv() {
    let out = bin()
        .args(["respond", "--format", "kv", "--config"])
        .arg(repo_config("slow_light.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let map = parse_kv(&stdout_of(&out));
    let n2: f64 = map.get("n2_m2_per_v2").unwrap().parse().unwrap();
    assert!((n2 + 1.9e-7).abs() / 1.9e-7 < 0.05, "n2 = {n2}");
    let vg: f64 = map.get("group_velocity_m_per_s").unwrap().parse().unwrap();
    assert!((vg - 17.0).abs() < 0.1, "vg = {vg}");
    assert!(map.contains_key("ratio_n4_n6_v2_per_m2"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let run = || {
        bin()
            .args(["respond", "--format", "kv", "--config"])
            .arg(repo_config("slow_light.toml"))
            .output()
            .unwrap()
    };
    let first = run();
    let second = run();
    assert_eq!(first.stdout, second.stdout);

    let sweep = || {
        bin()
            .args([
                "sweep",
                "--variable",
                "detuning",
                "--start",
                "-1.3e6",
                "--stop",
                "1.3e6",
                "--points",
                "9",
                "--format",
                "csv",
                "--config",
            ])
            .arg(repo_config("slow_light.toml"))
            .output()
            .unwrap()
    };
    assert_eq!(sweep().stdout, sweep().stdout);
}

#[test]
fn detuning_sweep_crosses_zero_with_chi() {
    let out = bin()
        .args([
            "sweep", "--variable", "detuning", "--start", "-1.3e6", "--stop", "1.3e6",
            "--points", "5", "--config",
        ])
        .arg(repo_config("slow_light.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let (header, rows) = parse_columns(&stdout_of(&out));
    let chi_col = header.iter().position(|h| h == "chi").unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows[0][chi_col] < 0.0);
    assert_eq!(rows[2][chi_col], 0.0);
    assert!(rows[4][chi_col] > 0.0);
}

#[test]
fn probe_amplitude_sweep_follows_group_velocity_law() {
    let out = bin()
        .args([
            "sweep", "--variable", "probe-amplitude", "--start", "0", "--stop", "2e4",
            "--points", "5", "--format", "csv", "--config",
        ])
        .arg(repo_config("slow_light.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let (header, rows) = parse_columns(&stdout_of(&out));
    let alpha_col = header.iter().position(|h| h == "probe_amplitude").unwrap();
    let vg_col = header.iter().position(|h| h == "group_velocity_m_per_s").unwrap();
    let vg0_col = header
        .iter()
        .position(|h| h == "group_velocity_lowest_order_m_per_s")
        .unwrap();
    // Shared per-photon field: x = alpha^2/(beta^2 + 1) with beta = 1e5.
    let beta_sq_plus_one = 1e10 + 1.0;
    for row in &rows {
        let x = row[alpha_col].powi(2) / beta_sq_plus_one;
        let expected = (1.0 + x).powi(2);
        let got = row[vg_col] / row[vg0_col];
        assert!(
            (got - expected).abs() <= 1e-9 * expected,
            "alpha {}: {got} vs {expected}",
            row[alpha_col]
        );
    }
}

#[test]
fn log_sweep_with_negative_start_is_a_usage_error() {
    let out = bin()
        .args([
            "sweep", "--variable", "detuning", "--start", "-1", "--stop", "10",
            "--points", "4", "--scale", "log", "--config",
        ])
        .arg(repo_config("slow_light.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("positive range"));
}

#[test]
fn single_point_sweep_is_rejected() {
    let out = bin()
        .args([
            "sweep", "--variable", "detuning", "--start", "0", "--stop", "1",
            "--points", "1", "--config",
        ])
        .arg(repo_config("slow_light.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    let mut text = std::fs::read_to_string(repo_config("desk.toml")).unwrap();
    text.push_str("\n[extra]\nnope = 1\n");
    std::fs::write(&path, text).unwrap();
    let out = bin().args(["respond", "--config"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("config parse error"));
}

#[test]
fn missing_config_flag_is_a_usage_error() {
    let out = bin().arg("respond").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("--config"));
}

#[test]
fn strict_mode_rejects_the_small_config() {
    // desk.toml sits below the large-n floor; --strict escalates the warning.
    let out = bin()
        .args(["respond", "--strict", "--config"])
        .arg(repo_config("desk.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_of(&out).contains("large-n"));
}

#[test]
fn out_file_honors_output_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("LAMBDA_EIT_OUT_DIR", dir.path())
        .args(["respond", "--format", "kv", "--out", "report.txt", "--config"])
        .arg(repo_config("slow_light.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let written = std::fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(parse_kv(&written).contains_key("chi"));
}

#[test]
fn validate_small_config_passes_and_dumps_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let traj_path = dir.path().join("trajectory.txt");
    let out = bin()
        .args(["validate", "--threads", "2", "--format", "kv"])
        .arg("--trajectory-out")
        .arg(&traj_path)
        .arg("--config")
        .arg(repo_config("desk.toml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let map = parse_kv(&stdout_of(&out));
    for check in [
        "eigensweep",
        "adiabatic_dark_state",
        "reversed_ramp_order",
        "coherence_large_n",
    ] {
        assert_eq!(
            map.get(&format!("{check}.status")).map(String::as_str),
            Some("PASS"),
            "{check}: {:?}",
            map.get(&format!("{check}.detail"))
        );
    }

    let traj = std::fs::read_to_string(&traj_path).unwrap();
    let (header, rows) = parse_columns(&traj);
    assert_eq!(header[0], "time_s");
    assert_eq!(header.len(), 6);
    assert!(rows.len() > 100);
    for row in &rows {
        let total = row[1] + row[2] + row[3];
        assert!((total - 1.0).abs() < 1e-8, "populations sum to {total}");
    }
    // Resonant preparation: the upper level stays essentially empty.
    let max_p2 = rows.iter().map(|r| r[2]).fold(0.0f64, f64::max);
    assert!(max_p2 < 1e-4, "max population_2 = {max_p2}");
}

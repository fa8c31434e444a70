use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn hardyz(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hardyz"))
        .args(args)
        .env("HARDYZ_OUT_DIR", dir)
        .output()
        .expect("run hardyz")
}

fn written(out: &Output, ext: &str) -> Vec<PathBuf> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| l.ends_with(ext))
        .map(PathBuf::from)
        .collect()
}

fn manifest(dir: &Path) -> Vec<Value> {
    fs::read_to_string(dir.join("manifests.jsonl"))
        .unwrap_or_default()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn table2_writes_two_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = hardyz(dir.path(), &["table2", "--T", "100,1000", "--H", "100"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = written(&out, ".csv");
    assert_eq!(csv.len(), 1);
    let text = fs::read_to_string(&csv[0]).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "T,H,mu_plus,mu_minus,ratio_plus,zero_count,audit_ok,refinements,status"
    );
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("100,100,"), "{}", lines[1]);
    let ratio: f64 = lines[1].split(',').nth(4).unwrap().parse().unwrap();
    assert!((ratio - 0.943850).abs() < 1e-5, "{ratio}");
    assert!(lines[2].ends_with(",ok"));

    let m = manifest(dir.path());
    assert_eq!(m.len(), 1);
    assert_eq!(m[0]["command"], "table2");
    assert_eq!(m[0]["cfg"]["em_switch_t"], 500.0);
    let paths = m[0]["output_paths"].as_array().unwrap();
    assert!(paths
        .iter()
        .any(|p| p.as_str() == Some(csv[0].to_str().unwrap())));
}

#[test]
fn paircorr_reports_the_constant() {
    let dir = tempfile::tempdir().unwrap();
    let out = hardyz(dir.path(), &["paircorr", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0));
    let json = written(&out, ".json");
    let v: Value = serde_json::from_str(&fs::read_to_string(&json[0]).unwrap()).unwrap();
    let a = v["A_star"].as_f64().unwrap();
    let g = v["G_star"].as_f64().unwrap();
    assert!((a - 0.952).abs() < 1e-3);
    assert!((0.32909..0.3292).contains(&g));
    let csv = fs::read_to_string(&written(&out, ".csv")[0]).unwrap();
    assert!(csv.starts_with("alpha,f,half_minus_f,G_cumulative\n"));
}

#[test]
fn negative_height_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = hardyz(dir.path(), &["measure", "--T", "-5", "--H", "10"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--T"), "{err}");
    assert!(manifest(dir.path()).is_empty());
}

#[test]
fn unknown_subcommand_and_flag_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(hardyz(dir.path(), &["tables"]).status.code(), Some(2));
    assert_eq!(
        hardyz(dir.path(), &["measure", "--T", "5"]).status.code(),
        Some(2)
    );
}

#[test]
fn config_file_with_unknown_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "bisectoin_tol = 1e-9\n").unwrap();
    let out = hardyz(
        dir.path(),
        &[
            "--config",
            cfg.to_str().unwrap(),
            "measure",
            "--T",
            "100",
            "--H",
            "10",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bisectoin_tol"));
}

#[test]
fn flag_overrides_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "bisection_tol = 1e-12\nsamples_per_mean_gap = 6\n").unwrap();
    let out = hardyz(
        dir.path(),
        &[
            "--config",
            cfg.to_str().unwrap(),
            "--bisection-tol",
            "1e-8",
            "measure",
            "--T",
            "100",
            "--H",
            "10",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let m = manifest(dir.path());
    assert_eq!(m[0]["cfg"]["bisection_tol"], 1e-8);
    assert_eq!(m[0]["cfg"]["samples_per_mean_gap"], 6.0);
    let json = written(&out, ".json");
    let v: Value = serde_json::from_str(&fs::read_to_string(&json[0]).unwrap()).unwrap();
    assert_eq!(v["bisection_tol"], 1e-8);
    assert_eq!(v["status"], "ok");
}

#[test]
fn reruns_produce_identical_csv_bodies() {
    let dir = tempfile::tempdir().unwrap();
    let a = hardyz(dir.path(), &["zeros", "--to", "200"]);
    let b = hardyz(dir.path(), &["zeros", "--to", "200"]);
    let (fa, fb) = (written(&a, ".csv"), written(&b, ".csv"));
    assert_eq!(fa.len(), 2);
    for (x, y) in fa.iter().zip(&fb) {
        assert_ne!(x, y);
        assert_eq!(fs::read(x).unwrap(), fs::read(y).unwrap());
    }
    assert_eq!(manifest(dir.path()).len(), 2);
    let zeros = fs::read_to_string(&fa[0]).unwrap();
    assert_eq!(zeros.lines().count(), 80);
    let first: f64 = zeros
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!((first - 14.134725141734694).abs() < 1e-9);
}

#[test]
fn z_eval_grid_and_points() {
    let dir = tempfile::tempdir().unwrap();
    let out = hardyz(dir.path(), &["z-eval", "--t", "-20,20"]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&written(&out, ".csv")[0]).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    let z = |r: &str| r.split(',').nth(1).unwrap().to_string();
    assert_eq!(z(rows[0]), z(rows[1]));

    let out = hardyz(
        dir.path(),
        &["z-eval", "--from", "10", "--to", "11", "--step", "0.25"],
    );
    let text = fs::read_to_string(&written(&out, ".csv")[0]).unwrap();
    assert_eq!(text.lines().count(), 6);

    let out = hardyz(dir.path(), &["z-eval", "--t", "3e10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mollifier_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = hardyz(dir.path(), &["mollifier", "--X", "30", "--with-b"]);
    assert_eq!(out.status.code(), Some(0));
    let csv = written(&out, ".csv");
    let coeffs = fs::read_to_string(&csv[0]).unwrap();
    assert_eq!(coeffs.lines().nth(2).unwrap(), "2,-0.5,-0.398102476455");
    assert_eq!(fs::read_to_string(&csv[1]).unwrap().lines().count(), 901);
    let v: Value =
        serde_json::from_str(&fs::read_to_string(&written(&out, ".json")[0]).unwrap()).unwrap();
    assert_eq!(v["b_bound_ok"], true);
    assert_eq!(v["beta_bound_ok"], true);

    let out = hardyz(dir.path(), &["mollifier", "--X", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn means_small_height() {
    let dir = tempfile::tempdir().unwrap();
    let out = hardyz(dir.path(), &["means", "--T", "200", "--theta", "0.2"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = written(&out, ".csv");
    assert_eq!(fs::read_to_string(&csv[0]).unwrap().lines().count(), 5);
    let checks = fs::read_to_string(&csv[1]).unwrap();
    let header: Vec<&str> = checks.lines().next().unwrap().split(',').collect();
    let row: Vec<&str> = checks.lines().nth(1).unwrap().split(',').collect();
    for flag in ["split_holds", "cs_holds", "triangle_holds"] {
        let i = header.iter().position(|h| *h == flag).unwrap();
        assert_eq!(row[i], "true", "{flag}");
    }
    assert_eq!(
        hardyz(dir.path(), &["means", "--T", "50"]).status.code(),
        Some(2)
    );
}

use std::path::Path;
use std::process::{Command, Output};

use jacobi_scattering::circle::CircleFunction;
use jacobi_scattering::closed_form::Example;
use jacobi_scattering::jacobi::JacobiParams;
use jacobi_scattering::scattering::ScatteringData;
use jacobi_scattering::spectral::SpectralMeasure;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobi-scattering"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_json<T: serde::Serialize>(dir: &TempDir, name: &str, value: &T) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn path_in(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn read<T: serde::de::DeserializeOwned>(path: impl AsRef<Path>) -> T {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn example_tables_pass() {
    for id in ["1", "2", "3", "4"] {
        let out = run(&["example", id, "--grid-log2", "11"]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "example {id}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let out = run(&["example", "1", "--a", "0.5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let b1 = text.lines().find(|l| l.starts_with("b,1,")).unwrap();
    let computed: f64 = b1.split(',').nth(2).unwrap().parse().unwrap();
    assert!((computed - 0.5).abs() < 1e-12);
}

#[test]
fn example_four_keeps_reference_row_out_of_the_verdict() {
    let out = run(&[
        "example", "4", "--z1", "0.5", "--mu1", "1", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], true);
    let rows = report["rows"].as_array().unwrap();
    let reference = rows.iter().find(|r| r["tol"].is_null()).unwrap();
    assert!(reference["deviation"].as_f64().unwrap() > 0.1);
}

#[test]
fn example_parameters_are_checked() {
    assert_eq!(run(&["example", "1", "--a", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["example", "4", "--z1", "0"]).status.code(), Some(2));
    assert_eq!(run(&["example", "4", "--mu1", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["example", "1", "--z1", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["example", "5"]).status.code(), Some(2));
}

#[test]
fn forward_of_trivial_measure() {
    let dir = TempDir::new().unwrap();
    let input = write_json(
        &dir,
        "spectral.json",
        &SpectralMeasure::semicircle(8).unwrap(),
    );
    let output = path_in(&dir, "scattering.json");
    let out = run(&["forward", &input, "-o", &output, "--grid-log2", "8"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let data: ScatteringData = read(&output);
    assert!(data.zeros.is_empty());
    assert!(data.s.samples().iter().all(|s| (s - 1.0).norm() < 1e-15));
}

#[test]
fn forward_of_single_factor_weight() {
    let dir = TempDir::new().unwrap();
    let ex = Example::One { a: 0.5 };
    let input = write_json(&dir, "spectral.json", &ex.measure(10).unwrap());
    let out = run(&["forward", &input, "--grid-log2", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let data: ScatteringData = serde_json::from_slice(&out.stdout).unwrap();
    let want = CircleFunction::from_fn(10, |t| ex.s(t)).unwrap();
    assert!(data.s.max_deviation(&want).unwrap() < 1e-12);
}

#[test]
fn malformed_json_reports_position() {
    let dir = TempDir::new().unwrap();
    let path = path_in(&dir, "bad.json");
    std::fs::write(&path, "{\"gamma1\": 0,\n \"gamma2\": }").unwrap();
    let out = run(&["forward", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    assert_eq!(
        run(&["inverse", &path_in(&dir, "missing.json")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn inverse_then_reconstruct_one_eigenvalue() {
    let dir = TempDir::new().unwrap();
    let ex = Example::Four { z1: 0.5, mu1: 1.0 };
    let data = write_json(&dir, "scattering.json", &ex.scattering_data(12).unwrap());
    let spectral = path_in(&dir, "spectral.json");
    let jacobi = path_in(&dir, "jacobi.json");
    assert_eq!(
        run(&["inverse", &data, "-o", &spectral]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["reconstruct", &spectral, "-o", &jacobi, "--nmax", "64"])
            .status
            .code(),
        Some(0)
    );
    let params: JacobiParams = read(&jacobi);
    let closed = ex.params().unwrap();
    for n in 1..=20 {
        assert!((params.a(n) - closed.a(n)).abs() < 1e-9);
        assert!((params.b(n) - closed.b(n)).abs() < 1e-9);
    }
    let out = run(&["reconstruct", &spectral, "--nmax", "5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("n,a_n,b_n"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn trivial_data_reconstructs_free_matrix() {
    let dir = TempDir::new().unwrap();
    let data = ScatteringData {
        gamma1: 0,
        gamma2: 0,
        zeros: vec![],
        mus: vec![],
        s: CircleFunction::constant(10, 1.0).unwrap(),
    };
    let input = write_json(&dir, "scattering.json", &data);
    let spectral = path_in(&dir, "spectral.json");
    assert_eq!(
        run(&["inverse", &input, "-o", &spectral, "--grid-log2", "10"])
            .status
            .code(),
        Some(0)
    );
    let out = run(&["reconstruct", &spectral, "--grid-log2", "10"]);
    let params: JacobiParams = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(params.head_len(), 0);
}

#[test]
fn roundtrip_report() {
    let dir = TempDir::new().unwrap();
    let ex = Example::Four { z1: 0.4, mu1: 0.7 };
    let input = write_json(&dir, "scattering.json", &ex.scattering_data(11).unwrap());
    let report_path = path_in(&dir, "report.json");
    let out = run(&["roundtrip", &input, "-o", &report_path, "--grid-log2", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = read(&report_path);
    assert_eq!(report["version"], 1);
    assert_eq!(report["pass"], true);
    assert!(report["max_s_deviation"].as_f64().unwrap() < 1e-8);
    assert_eq!(report["mu_relative_deviation"].as_array().unwrap().len(), 1);
}

#[test]
fn roundtrip_reports_index_mismatch() {
    let dir = TempDir::new().unwrap();
    let data = ScatteringData {
        gamma1: 0,
        gamma2: 0,
        zeros: vec![],
        mus: vec![],
        s: CircleFunction::from_fn(8, |t| t).unwrap(),
    };
    let input = write_json(&dir, "scattering.json", &data);
    let report_path = path_in(&dir, "report.json");
    let out = run(&["roundtrip", &input, "-o", &report_path, "--grid-log2", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("index mismatch"));
    let report: serde_json::Value = read(&report_path);
    assert_eq!(report["violation"]["item"], "index_mismatch");
    assert_eq!(report["pass"], false);
}

#[test]
fn csv_only_where_defined() {
    let dir = TempDir::new().unwrap();
    let ex = Example::One { a: 0.2 };
    let data = write_json(&dir, "scattering.json", &ex.scattering_data(8).unwrap());
    assert_eq!(
        run(&["inverse", &data, "--format", "csv"]).status.code(),
        Some(2)
    );
    let measure = write_json(&dir, "spectral.json", &ex.measure(8).unwrap());
    let out = run(&["forward", &measure, "--format", "csv", "--grid-log2", "8"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("j,theta,re_s,im_s"));
    assert_eq!(text.lines().count(), 257);
}

use std::path::Path;
use std::process::{Command, Output};

fn kummer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer")).args(args).output().expect("binary runs")
}

fn write_spec(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_primary_passes_and_json_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let out = kummer(&["verify", "bundled:example-primary", "--json", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = kummer(&["--json", b.to_str().unwrap(), "verify", "bundled:example-primary"]);
    assert_eq!(out.status.code(), Some(0));
    let ja = std::fs::read(&a).unwrap();
    assert_eq!(ja, std::fs::read(&b).unwrap());

    let v: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(v["overall"], "PASS");
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let claims = v["claims"].as_array().unwrap();
    assert!(claims.iter().all(|c| c["status"].is_string()));
    assert!(claims
        .iter()
        .filter(|c| {
            // non-integer numeric values need a tolerance
            let v = c["value"].as_str().unwrap();
            v.parse::<f64>().is_ok() && v.contains(['.', 'e'])
        })
        .all(|c| c["tolerance"].is_number()));
}

#[test]
fn half_length_reports_the_stated_betti_mismatch() {
    let out = kummer(&["verify", "bundled:example-half-length"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let fails: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(fails.len(), 2, "{fails:?}");
    assert!(fails.iter().any(|l| l.contains("b2") && l.contains("19 (expected 17)")));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_spec(dir.path(), "bad.spec", "version = 1\ndimension = 2\n[generator g]\nrow1 = 0 0\nrow2 = 0 1\n");
    let out = kummer(&["census", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3") && err.contains("not a flat-torus isometry"), "{err}");

    assert_eq!(kummer(&["verify", "/nonexistent/x.spec"]).status.code(), Some(2));
    assert_eq!(kummer(&["--max-group-order", "4", "verify", "bundled:example-primary"]).status.code(), Some(2));
}

#[test]
fn trivial_group_gives_torus_betti_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "t.spec", "version = 1\ndimension = 5\n[generator id]\nsigns = 1 1 1 1 1\n");
    let json = dir.path().join("t.json");
    let out = kummer(&["verify", &spec, "--json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(json).unwrap()).unwrap();
    let module = |name: &str| {
        v["modules"].as_array().unwrap().iter().find(|m| m["module"] == name).unwrap()["data"].clone()
    };
    assert_eq!(module("census")["components"], 0);
    assert_eq!(module("spin")["verdict"], "liftable");
    assert_eq!(module("cohomology")["orbifold_betti"], serde_json::json!([1, 5, 10, 10, 5, 1]));
}

#[test]
fn curvature_scan_writes_both_csv_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let out = kummer(&["curvature-scan", "bundled:example-primary", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let annulus = std::fs::read_to_string(&csv).unwrap();
    let mu = std::fs::read_to_string(dir.path().join("scan.mu.csv")).unwrap();
    assert_eq!(annulus.lines().next(), Some("d,r_sup,sup_ric_annulus,sup_rm_annulus"));
    assert_eq!(mu.lines().next(), Some("d,rescaled_sup_ric,diam_bound,mu_proxy"));
    assert_eq!(annulus.lines().count(), 6);
    for line in mu.lines().skip(1) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        assert!((cols[2] - (1.0 + 0.3 / cols[0])).abs() < 1e-12);
        assert!((cols[3] - cols[1] * cols[2] * cols[2]).abs() <= 1e-8 * cols[3]);
    }
}

#[test]
fn subcommands_run_single_stages() {
    let out = kummer(&["fixed-locus", "bundled:example-primary", "--element", "alpha*beta"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "alpha*beta: 0 component(s)");
    assert_eq!(kummer(&["fixed-locus", "bundled:example-primary", "--element", "delta"]).status.code(), Some(2));

    let out = kummer(&["spin", "bundled:example-primary"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("obstructed") && !text.contains("cohomology"));

    let out = kummer(&["f-structure", "bundled:example-half-length"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("rank"));

    let out = kummer(&["betti", "bundled:example-primary"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("b2                                 13"));
}

#[test]
fn tolerance_scale_tightens_numeric_checks() {
    // a tiny scale makes the slope windows too narrow to pass
    let out = kummer(&["--tolerance-scale", "1e-9", "curvature-scan", "bundled:example-primary", "--csv", "/dev/null"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(kummer(&["--tolerance-scale", "0", "verify", "bundled:example-primary"]).status.code(), Some(2));
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noncompact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("noncompact-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn measure_against_oracle() {
    let o = run(&[
        "measure",
        "tail(center=[], r=1, start=1)",
        "--kind",
        "alpha",
        "--oracle",
        "k=3",
        "--trunc",
        "8",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("exact=1.41421356\n"), "{out}");
    assert!(out.contains("oracle=1.41421356 "), "{out}");
    assert!(out.contains("difference=0\n"));
}

#[test]
fn measure_of_finite_set_is_zero() {
    let o = run(&["measure", "finite([[1,0],[0,1]])", "--kind", "beta"]);
    assert_eq!(stdout(&o), "exact=0\n");
}

#[test]
fn parse_errors_are_usage_errors() {
    let o = run(&["measure", "tail(center=[], r=1 start=1)", "--kind", "chi"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("parse error at 20"), "{err}");
    assert!(
        err.ends_with(&format!("\n  {}^\n", " ".repeat(20))),
        "{err}"
    );
}

#[test]
fn oracle_budget_is_enforced() {
    let o = run(&[
        "measure",
        "tail(center=[], r=1, start=1)",
        "--kind",
        "alpha",
        "--oracle",
        "k=2",
        "--trunc",
        "40",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).to_lowercase().contains("budget"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn modulus_csv_to_file() {
    let path = scratch("beta.csv");
    let o = run(&[
        "modulus",
        "--kind",
        "beta",
        "--prime",
        "--grid",
        "0:1:0.5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("epsilon,analytic,numeric,witness"));
    let last: Vec<&str> = lines.last().unwrap().splitn(4, ',').collect();
    assert_eq!(last[0], "1.0");
    let (analytic, numeric): (f64, f64) = (last[1].parse().unwrap(), last[2].parse().unwrap());
    assert!((analytic - 0.2928932188).abs() < 1e-9 && (numeric - analytic).abs() < 1e-5);
}

#[test]
fn modulus_domain_failures_are_per_point() {
    let o = run(&[
        "modulus",
        "--kind",
        "alpha",
        "--prime",
        "--grid",
        "1.3:1.5:0.1",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().last().unwrap().starts_with("1.5,"));
    assert!(stderr(&o).contains("eps = 1.5"));
}

#[test]
fn modulus_svg_and_json() {
    let o = run(&[
        "modulus", "--kind", "alpha", "--grid", "0:1:0.25", "--format", "svg",
    ]);
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg") && svg.contains("polyline"));
    let o = run(&[
        "modulus",
        "--kind",
        "chi",
        "--prime",
        "--grid",
        "0:0.5:0.25",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "chi");
    assert!(v["grid"][1]["analytic_value"].is_null());
    assert!(v["grid"][1]["numeric_estimate"].as_f64().unwrap() > 0.0);
}

#[test]
fn hull_distance_of_a_tilted_tail() {
    let o = run(&[
        "hull-dist",
        "tail(center=[0.8], r=0.6, start=2)",
        "--trunc",
        "4",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let want = (0.64_f64 + 0.36 / 4.0).sqrt();
    let line = stdout(&o).lines().next().unwrap().to_string();
    let got: f64 = line.trim_start_matches("distance=").parse().unwrap();
    assert!((got - want).abs() < 1e-7, "{line}");
}

#[test]
fn characteristic_of_beta_is_zero() {
    let o = run(&["characteristic", "--kind", "beta", "--grid", "0:1:0.25"]);
    assert_eq!(stdout(&o), "characteristic=0\n");
}

#[test]
fn verify_single_suite_and_unknown_suite() {
    let o = run(&["verify", "--suite", "oracles", "--no-runtime"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summary"]["passed"], 1);
    assert!(!v["checks"][0]["claim"].as_str().unwrap().is_empty());
    assert!(v["checks"][0].get("runtime_seconds").is_none());

    let o = run(&["verify", "--suite", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_then_flags() {
    let path = scratch("run.conf");
    std::fs::write(&path, "p = 3\ngrid = 0:0.5:0.5\nformat = json\n").unwrap();
    let o = run(&[
        "characteristic",
        "--kind",
        "alpha",
        "--config",
        path.to_str().unwrap(),
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "alpha");
    let o = run(&[
        "modulus",
        "--kind",
        "beta",
        "--config",
        path.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    let out = stdout(&o);
    assert!(out.starts_with("epsilon,"));
    // p = 3 closed form at 0.5: 1 - (1 - 0.125/2)^(1/3).
    let want = 1.0 - (1.0_f64 - 0.0625).powf(1.0 / 3.0);
    let row: Vec<&str> = out.lines().nth(2).unwrap().split(',').collect();
    assert!((row[1].parse::<f64>().unwrap() - want).abs() < 1e-12);

    std::fs::write(&path, "p = 3\nnonsense = 1\n").unwrap();
    let o = run(&[
        "modulus",
        "--kind",
        "beta",
        "--config",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn p_below_two_has_no_closed_form() {
    let o = run(&["verify", "--suite", "chain", "--p", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
}

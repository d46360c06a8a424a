use std::process::{Command, Output};

use serde_json::Value;

const TWISTED: &str = r#"{"kind":"circle","length":6.2832,"holonomy":3.1416}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phi-torsion"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn torsion_of_the_twisted_circle() {
    let o = run(&["torsion", "--geometry", TWISTED]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["logT"].as_f64().unwrap() - 0.6931).abs() < 1e-4);
    assert_eq!(v["per_degree"].as_array().unwrap().len(), 2);
    assert_eq!(v["convention"]["orientation"], "even degrees inverted");
}

#[test]
fn output_is_byte_identical_and_geometry_round_trips() {
    let a = stdout(&run(&["torsion", "--geometry", TWISTED]));
    let b = stdout(&run(&["torsion", "--geometry", TWISTED]));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    let emitted = v["geometry"].to_string();
    let again = stdout(&run(&["torsion", "--geometry", &emitted]));
    assert_eq!(a, again);
}

#[test]
fn indexset_text_interface() {
    let o = run(&["indexset", "eunion", "{(0,0)}", "{(0,0)}"]);
    assert_eq!(stdout(&o), "{(0,1)}; cutoff=10\n");
    let o = run(&["indexset", "normalize", "{(0,0),(1,0)}"]);
    assert_eq!(stdout(&o), "{(0,0)}; cutoff=10\n");
    let o = run(&["indexset", "check", "{(0,1)}", "0"]);
    assert_eq!(stdout(&o), "false\n");
    let o = run(&["indexset", "heat-bounds", "2", "3"]);
    assert!(stdout(&o).contains("φf₀"));
}

#[test]
fn heat_trace_csv() {
    let g = r#"{"kind":"circle","length":1.0}"#;
    let o = run(&["heat-trace", "--geometry", g, "--degree", "0", "--grid", ""]);
    assert_eq!(stdout(&o), "t,trace,short_expansion,residual,trace_error\n");
    let o = run(&[
        "heat-trace",
        "--geometry",
        g,
        "--degree",
        "0",
        "--t-min",
        "0.0009765625",
        "--points",
        "15",
    ]);
    let rows: Vec<Vec<f64>> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 15);
    assert!(rows[0][3].abs() < 1e-12);
}

#[test]
fn regint_with_rescaling() {
    let o = run(&[
        "regint",
        "1/(1+x)",
        "--zero",
        "1:0,-1:1",
        "--zero-order",
        "2",
        "--inf",
        "1:-1,-1:-2",
        "--inf-order",
        "3",
        "--lambda",
        "e",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["value"].as_f64().unwrap() - (-1f64).exp()).abs() < 1e-8);
    assert!((v["log_coeffs"][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["error_estimate"].as_f64().unwrap() < 1e-8);
}

#[test]
fn glue_and_suite() {
    let o = run(&["glue", "--length", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["ratio"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    let o = run(&["suite"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 13);
}

#[test]
fn exit_codes_and_error_objects() {
    let o = run(&["torsion"]);
    assert_eq!(o.status.code(), Some(2));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["kind"], "config");
    assert_eq!(
        run(&["torsion", "--geometry", "{\"kind\":\"sphere\"}"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    let o = run(&[
        "zeta",
        "--geometry",
        r#"{"kind":"circle","length":1.0}"#,
        "--degree",
        "0",
        "--at",
        "0.5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let e: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(e["error"]["code"], 1);
    let o = Command::new(env!("CARGO_BIN_EXE_phi-torsion"))
        .args(["glue"])
        .env("PHI_TORSION_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("glue.json");
    let o = run(&["glue", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["chi_factor"].as_f64(), Some(2.0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

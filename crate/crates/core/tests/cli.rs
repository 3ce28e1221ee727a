use std::path::PathBuf;
use std::process::{Command, Output};

use quncert::{born_distribution, Observable, State};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn quncert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quncert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn examples_match_golden() {
    let golden = include_str!("golden/examples.txt");
    let out = quncert(&["examples"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), golden);
}

#[test]
fn examples_json_is_stable() {
    let a = stdout(&quncert(&["--format", "json", "examples"]));
    let b = stdout(&quncert(&["--format", "json", "examples"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let z = &v["rows"][3];
    assert_eq!(z["label"], "z");
    let s = z["values"][3].as_f64().unwrap();
    assert!((s - 3f64.sqrt() / 2.0).abs() < 1e-12);
}

#[test]
fn eval_reports_reference_values() {
    let out = quncert(&[
        "--format", "json", "eval", "-f", "v", "-f", "mix:0.5*v+0.5*e",
        "-A", &data("plus_minus.json"), "-s", &data("mixed.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for entry in v["values"].as_array().unwrap() {
        assert!((entry["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    let out = quncert(&[
        "--format", "json", "eval", "-f", "g",
        "-A", &data("unsharp_plus_minus.json"), "-s", &data("psi.json"),
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!((v["values"][0]["value"].as_f64().unwrap() - 0.667).abs() < 1e-3);
}

#[test]
fn axioms_exit_codes() {
    assert_eq!(quncert(&["axioms", "-f", "e", "-d", "3"]).status.code(), Some(0));
    assert_eq!(
        quncert(&["axioms", "-f", "s", "-d", "4", "--samples", "10000", "--seed", "7"]).status.code(),
        Some(0)
    );
    assert_eq!(quncert(&["axioms", "-f", "v", "-d", "2", "--samples", "1"]).status.code(), Some(0));
    let out = quncert(&["--format", "json", "axioms", "-f", "g", "-d", "3", "--samples", "200"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["axioms"]["jensen"]["pass"], true);
}

#[test]
fn input_and_dimension_errors() {
    let out = quncert(&["eval", "-f", "v", "-A", &data("plus_minus.json"), "-s", &data("qutrit_mixed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension mismatch"));

    let out = quncert(&["eval", "-f", "nope", "-A", &data("plus_minus.json"), "-s", &data("mixed.json")]);
    assert_eq!(out.status.code(), Some(1));

    let out = quncert(&["distribution", "-A", &data("mixed.json"), "-s", &data("mixed.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn maxunc_check_and_generate() {
    let out = quncert(&["maxunc", "check", "-A", &data("plus_minus.json"), "-s", &data("phi_half.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("maximal_uncertainty true"));

    let out = quncert(&["maxunc", "check", "-A", &data("plus_minus.json"), "-s", &data("psi.json")]);
    assert_eq!(out.status.code(), Some(3));

    let out = quncert(&["maxunc", "generate", "-d", "3", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let rho = State::from_json(&stdout(&out)).unwrap();
    let p = born_distribution(&rho, &Observable::standard_basis(3).unwrap()).unwrap();
    assert!(p.probs().iter().all(|x| (x - 1.0 / 3.0).abs() < 1e-10));
    assert_eq!(stdout(&out), stdout(&quncert(&["maxunc", "generate", "-d", "3", "--seed", "1"])));

    let out = quncert(&["maxunc", "generate", "--alpha", "0.333333"]);
    let rho = State::from_json(&stdout(&out)).unwrap();
    let m = rho.matrix();
    assert!((m.get(0, 0).re - 1.0 / 9.0).abs() < 1e-5);
    assert!((m.get(1, 1).re - 8.0 / 9.0).abs() < 1e-5);
    // ⟨0|ρ|1⟩ = α·conj(i√(1−α²)) = −i√8/9
    assert!((m.get(0, 1).im + 8f64.sqrt() / 9.0).abs() < 1e-5);
}

#[test]
fn discriminate_table() {
    let out = quncert(&[
        "discriminate", "-A", &data("unsharp_plus_minus.json"),
        "-s", &data("mixed.json"), "-s", &data("psi.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("psi    0.6667  0.3333  0.8889  0.9183  0.6667  0.8660"), "{text}");
    assert!(text.contains("mixed  psi     0.1667"), "{text}");
}

use std::process::{Command, Output};

use poplab::gfseries::{MultiPoly, XSeries};

fn poplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poplab"))
        .args(args)
        .env_remove("POPLAB_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = poplab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    poplab(args).status.code().unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "--pops", "Pj:4,Pt:4", "--separable", "--n", "4"]), "12\n");
    assert_eq!(stdout(&["count", "--banded", "2,2", "--n", "5"]), "8\n");
    assert_eq!(stdout(&["count", "--pops", "Pj:3", "--n", "0"]), "1\n");
    assert_eq!(stdout(&["count", "--n", "5"]), "120\n");
    assert_eq!(stdout(&["count", "--n", "4", "--pops", "Pj:3,Pt:3", "--format", "csv"]), "n,count\n4,5\n");
}

#[test]
fn distribution_examples() {
    let json = stdout(&["distribution", "--n", "2", "--pops", "Pj:3", "--separable", "--format", "json"]);
    let p: MultiPoly = serde_json::from_str(&json).unwrap();
    let want = &MultiPoly::monomial([1, 0, 2, 1, 1, 2]) + &MultiPoly::monomial([0, 1, 1, 2, 2, 1]);
    assert_eq!(p, want);
    assert_eq!(stdout(&["distribution", "--n", "1", "--pops", "Pj:5"]), "u*v*s*t\n");
    assert_eq!(
        stdout(&["distribution", "--n", "3", "--pops", "Pj:2,Pt:5", "--separable"]),
        "p^2*u^3*v*s*t^3\n"
    );
}

#[test]
fn recurrence_examples() {
    assert_eq!(stdout(&["recurrence", "--banded", "2,2", "--terms", "12"]), "1 - x - x^2\n");
    assert_eq!(
        stdout(&["recurrence", "--system", "5,5", "--terms", "16"]),
        "1 - x - x^2 - 3x^3 - 11x^4 - 7x^5 - x^6\n"
    );
    assert_eq!(stdout(&["recurrence", "--seq", "1,1,1,1,1,1"]), "1 - x\n");
    assert_eq!(code(&["recurrence", "--seq", "1,2,4"]), 3);
    let json = stdout(&["recurrence", "--banded", "2,3", "--terms", "12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["order"], 3);
    assert_eq!(v["denominator"], "1 - x - x^2 - x^3");
}

#[test]
fn kfib_examples() {
    assert_eq!(stdout(&["kfib", "--k", "2", "--n", "7"]), "13\n");
    assert_eq!(stdout(&["kfib", "--k", "5", "--n", "1"]), "1\n");
    assert_eq!(stdout(&["kfib", "--k", "3", "--n", "5"]), "7\n");
    assert_eq!(stdout(&["kfib", "--k", "3", "--n", "-2"]), "0\n");
    assert_eq!(code(&["kfib", "--k", "1", "--n", "5"]), 2);
}

#[test]
fn verify_claims() {
    let out = stdout(&["verify", "--all", "--n-max", "7"]);
    assert!(out.ends_with("18/18 claims pass\n"), "{out}");
    assert!(!out.contains("FAIL"));
    assert!(stdout(&["verify", "--claim", "thm2.1", "--n-max", "9"]).starts_with("PASS kfib-count"));
    assert!(stdout(&["verify", "--claim", "eq1.1", "--n-max", "6"]).starts_with("PASS increasing-only"));
    let json = stdout(&["verify", "--claim", "banded-window", "--n-max", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[0]["pass"], true);
    assert_eq!(code(&["verify", "--claim", "no-such-claim"]), 2);
    assert_eq!(code(&["verify", "--claim", "gf-3-3", "--n-max", "11"]), 3);
}

#[test]
fn exit_codes_and_caps() {
    assert_eq!(code(&["count", "--pops", "Pj:3", "--n", "13"]), 1);
    assert_eq!(code(&["distribution", "--n", "11"]), 1);
    assert_eq!(code(&["count", "--pops", "Pj:3", "--n", "13", "--max-n", "13"]), 2);
    assert_eq!(stdout(&["count", "--pops", "Pj:3", "--n", "13", "--max-n", "13", "--allow-large-n"]), "4096\n");
    let raised = Command::new(env!("CARGO_BIN_EXE_poplab"))
        .args(["count", "--pops", "Pj:3", "--n", "13"])
        .env("POPLAB_MAX_N", "13")
        .output()
        .unwrap();
    assert!(raised.status.success());
    assert_eq!(code(&["count", "--pops", "Pq:3", "--n", "3"]), 2);
    assert_eq!(code(&["count", "--banded", "0,2", "--n", "3"]), 2);
    assert_eq!(code(&["count", "--n", "3", "--format", "xml"]), 2);
    assert_eq!(code(&["series", "--explicit", "6,3"]), 2);
}

#[test]
fn outputs_are_deterministic() {
    let args = ["distribution", "--n", "8", "--pops", "Pj:5,Pt:5", "--separable", "--format", "json"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let mut seq = args.to_vec();
    seq.extend(["--jobs", "1"]);
    assert_eq!(a, stdout(&seq));
}

#[test]
fn json_round_trips() {
    let json = stdout(&["series", "--explicit", "4,4", "--order", "6", "--format", "json"]);
    let s: XSeries = serde_json::from_str(&json).unwrap();
    let sys = stdout(&["series", "--system", "4,4", "--order", "6", "--format", "json"]);
    assert_eq!(s, serde_json::from_str::<XSeries>(&sys).unwrap());
    assert_eq!(s.order(), 6);
    let brute = stdout(&["series", "--pops", "Pj:4,Pt:4", "--separable", "--order", "6", "--format", "json"]);
    assert_eq!(s, serde_json::from_str::<XSeries>(&brute).unwrap());
    let json = stdout(&["sequence", "--banded", "2,3", "--terms", "8", "--format", "json"]);
    assert_eq!(poplab::banded::sequence_from_json(json.trim()).unwrap().len(), 8);
    assert_eq!(stdout(&["sequence", "--banded", "2,3", "--terms", "8"]), "1,1,2,4,7,13,24,44\n");
    let csv = stdout(&["sequence", "--banded", "2,2", "--terms", "5", "--format", "csv"]);
    assert_eq!(poplab::banded::sequence_from_csv(&csv).unwrap().len(), 5);
}

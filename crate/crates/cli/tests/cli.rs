use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seifert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn dedekind_worked_example() {
    let out = run(&["dedekind", "--beta", "4", "--alpha", "7", "--x", "2/7", "--y", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["fast"], "-3/28");
    assert_eq!(v["direct"], "-3/28");
}

#[test]
fn eta_poincare_sphere() {
    let out = run(&["eta", "--brieskorn", "2,3,5", "--rho", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["eta0"], "539/360");
    assert_eq!(v["F"], "8");
    assert_eq!(v["signature_constant"], "181/90");

    let general = run(&["eta", "--seifert", "0:-2:2/1,3/2,5/4"]);
    assert_eq!(json(&general)["eta0"], "539/360");

    let wrong = run(&["eta", "--brieskorn", "2,3,5", "--rho", "1/3"]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn eta_series_flag() {
    let out = run(&["eta", "--brieskorn", "2,3,7", "--at", "0", "--digits", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["series"]["value"].as_str().unwrap().ends_with("@20"));
}

#[test]
fn swf_outputs() {
    let out = run(&["swf", "--brieskorn", "5,7,9"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "P = 2T + T^3 + T^7 + T^9 + T^25");
    let out = run(&["swf", "--brieskorn", "3,5,13", "--json"]);
    let v = json(&out);
    assert_eq!(v["P"], "T^3 + T^5 + T^9");
    assert_eq!(v["P_minus"], "T^4 + T^6 + T^10");
    let out = run(&["swf", "--brieskorn", "2,3,7", "--latex"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("\\Sigma(2,3,7) & P = T^{-1}"));
}

#[test]
fn froyshov_row() {
    let v = json(&run(&["froyshov", "--brieskorn", "2,3,11"]));
    assert_eq!((v["F"].as_str(), v["eight_m"].as_i64(), v["Z"].as_str()), (Some("0"), Some(8), Some("8")));
}

#[test]
fn plumbing_flags() {
    let v = json(&run(&["plumbing", "--brieskorn", "2,3,7", "--matrix", "--theta", "--diagonalize"]));
    assert_eq!(v["matrix"][0], serde_json::json!([-1, 1, 1, 1]));
    assert_eq!(v["inverse"][0], serde_json::json!([-42, -21, -14, -6]));
    assert_eq!(v["theta"], 0);
    assert_eq!(v["diagonal_rank"], 4);
    let v = json(&run(&["plumbing", "--brieskorn", "2,3,11", "--theta", "--diagonalize"]));
    assert_eq!(v["theta"], 8);
    assert_eq!(v["residual_is_negative_e8"], true);
}

#[test]
fn table_triples_and_families() {
    let v = json(&run(&["table", "--triples", "2,3,5", "2,3,7", "5,7,9"]));
    let rows: Vec<(String, i64, String)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["F"].as_str().unwrap().into(), r["eight_m"].as_i64().unwrap(), r["Z"].as_str().unwrap().into()))
        .collect();
    assert_eq!(
        rows,
        vec![("8".into(), 0, "8".into()), ("-8".into(), 8, "0".into()), ("0".into(), 0, "0".into())]
    );
    let v = json(&run(&["table", "--family", "2,3,6k+1", "--k", "1..3"]));
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["Z"] == "0"));
    let out = run(&["table"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["rows"], serde_json::json!([]));
    let csv = run(&["table", "--triples", "2,3,7", "--format", "csv"]);
    assert_eq!(String::from_utf8_lossy(&csv.stdout), "a,b,c,F,eight_m,Z,P\n2,3,7,-8,8,0,T^-1\n");
}

#[test]
fn table_to_file() {
    let dir = std::env::temp_dir().join(format!("seifert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.tex");
    let out = run(&["table", "--triples", "2,3,5", "--format", "latex", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("$(2,3,5)$ & $8$ & $0$ & $8$"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_suites() {
    for args in [
        vec!["verify", "froyshov-table"],
        vec!["verify", "dedekind-oracle", "--seed", "7", "--cases", "500"],
        vec!["verify", "families", "--k-max", "10"],
        vec!["verify", "lattice", "--cases", "20"],
        vec!["verify", "eta-consistency", "--cases", "40"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stdout).contains("checks passed"));
    }
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "nope"],
        vec!["table", "--family", "2,5,6k+1", "--k", "1..2"],
        vec!["plumbing", "--brieskorn", "2,4,5"],
        vec!["dedekind", "--beta", "2", "--alpha", "4"],
        vec!["swf", "--brieskorn", "2,3"],
        vec!["eta", "--seifert", "0:-2:2/1,3x2"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
    let out = run(&["table", "--family", "2,5,6k+1", "--k", "1..2"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 2"));
}

#[test]
fn sequential_flag_matches() {
    let a = run(&["--sequential", "table", "--triples", "3,5,7", "2,3,13"]);
    let b = run(&["table", "--triples", "3,5,7", "2,3,13"]);
    assert_eq!(a.stdout, b.stdout);
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_trielliptic"));
    c.env_remove("TRIELLIPTIC_CATALOG");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

fn write(name: &str, text: &str) -> PathBuf {
    let p = scratch(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

// x1^2 y0^3 + x0 x1 y2^3 + x0^2 y1^3 + x0 x1 y0 y1 y2: an (N2) member.
const N2_FORM: &str = "1 0 3 0\n1 1 0 3\n1 2 0 0\n1 1 1 1\n";

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["git", "families"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--n", "4"]).status.code(), Some(2));
    assert_eq!(run(&["geom", "verify-family", "--label", "N9"]).status.code(), Some(2));
    assert_eq!(run(&["git", "classify", "--poly", "/nonexistent/f.txt"]).status.code(), Some(2));
    let bad = write("bad.txt", "1 3 0 0\n");
    assert_eq!(run(&["git", "classify", "--poly", s(&bad)]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn families_table_has_seven_rows() {
    let o = run(&["git", "families", "--sign", "negative", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r.starts_with('U')));
}

#[test]
fn families_json_carries_schema_and_manifest() {
    let o = run(&["git", "families", "--sign", "nonpositive"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["schemaVersion"], "1.0");
    assert_eq!(v["families"].as_array().unwrap().len(), 7);
    assert_eq!(v["manifest"]["command"][0], "git");
    assert_eq!(v["manifest"]["catalogs"].as_array().unwrap().len(), 2);
}

#[test]
fn strata_dims() {
    let v = json_of(&run(&["git", "strata-dims"]));
    let dims: Vec<(String, i64)> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["label"].as_str().unwrap().to_string(), r["dim"].as_i64().unwrap()))
        .collect();
    assert!(dims.contains(&("zeta".into(), 10)));
    assert!(dims.contains(&("r1".into(), 13)));
}

#[test]
fn reports_are_byte_identical_without_timing() {
    // the output path is part of the manifest, so both runs write to the same file
    let p = scratch("det.json");
    let mut bytes = Vec::new();
    for _ in 0..2 {
        let o = run(&["geom", "verify-family", "--label", "N2", "--samples", "8", "--seed", "7", "--no-timing", "--out", s(&p)]);
        assert_eq!(o.status.code(), Some(0));
        bytes.push(std::fs::read(&p).unwrap());
    }
    assert!(bytes[0] == bytes[1], "reports differ");
    let v: Value = serde_json::from_slice(&bytes[0]).unwrap();
    assert_eq!(v["passed"], 8);
    assert_eq!(v["manifest"]["seed"], 7);
    assert!(v["manifest"].get("wallClockSec").is_none());
}

#[test]
fn classify_and_analyze_a_polynomial() {
    let f = write("n2.txt", N2_FORM);
    let v = json_of(&run(&["git", "classify", "--poly", s(&f)]));
    assert_eq!(v["classification"]["verdict"], "TORUS_STRICTLY_SEMISTABLE");
    assert_eq!(v["classification"]["family"], "N2");
    let v = json_of(&run(&["geom", "analyze", "--poly", s(&f), "--point", "1,0,1,0,0"]));
    assert!(v["matching_labels"].as_array().unwrap().iter().any(|l| l == "N2"));
    assert_eq!(v["corank"][1]["CORANK"], 2);
    assert_eq!(run(&["geom", "analyze", "--poly", s(&f), "--point", "1,0,1"]).status.code(), Some(2));
}

#[test]
fn quadratic_form_commands() {
    for (n, rho) in [(1, 3), (2, 4), (3, 3)] {
        let v = json_of(&run(&["qf", "picard", "--lattice", &format!("Sigma{n}")]));
        assert_eq!(v["picard"]["rho"], rho);
    }
    let v = json_of(&run(&["qf", "gauss", "--m", "-3", "--lattice", "Sigma1"]));
    let im = v["value"][1].as_f64().unwrap();
    assert!((im + 27f64.sqrt()).abs() < 1e-9, "{im}");
    let v = json_of(&run(&["qf", "census", "--lattice", "Sigma3"]));
    assert_eq!(v["isotropic"]["oq_orbits"], 2);
    // lattice names fall back to the lattice catalog
    let v = json_of(&run(&["qf", "census", "--lattice", "A2"]));
    assert_eq!(v["discForm"]["orders"][0], 3);
}

#[test]
fn lattice_commands() {
    let v = json_of(&run(&["lat", "roots", "--name", "M(D16E8)"]));
    assert_eq!(v["rootCount"], 720);
    let o = run(&["lat", "eichler", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["check"]["holds"], true);
    assert_eq!(run(&["lat", "roots", "--name", "M(Q7)"]).status.code(), Some(2));

    let j = write("j.txt", "1 -2 0 0 1 1 -1 -1 -1 -1 -1 -1 0 0 0 0 0 0 0 0\n0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0\n");
    let v = json_of(&run(&["lat", "normal-form", "--lattice", "Sigma1", "--j", s(&j)]));
    assert_eq!(v["normalForm"]["e"], 1);
    assert_eq!(v["normalForm"]["t"], 0);
    assert_eq!(v["bSignature"], serde_json::json!([0, 16]));
}

#[test]
fn complement_of_l8_in_e8_cubed() {
    let v = json_of(&run(&["lat", "complement", "--source", "L8", "--target", "M(E8^3)"]));
    let classes = v["results"][0]["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 1);
}

#[test]
fn config_file_and_flag_precedence() {
    let cfg = write("cfg.toml", "seed = 11\nsamples = 3\nno-timing = true\n");
    let v = json_of(&run(&["--config", s(&cfg), "geom", "verify-family", "--label", "beta"]));
    assert_eq!(v["manifest"]["seed"], 11);
    assert_eq!(v["samples"], 3);
    assert!(v["manifest"].get("wallClockSec").is_none());
    let v = json_of(&run(&["--config", s(&cfg), "geom", "verify-family", "--label", "beta", "--seed", "5"]));
    assert_eq!(v["manifest"]["seed"], 5);
    let bad = write("bad.toml", "colour = 1\n");
    assert_eq!(run(&["--config", s(&bad), "git", "strata-dims"]).status.code(), Some(2));
}

#[test]
fn catalog_directory_from_environment() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog");
    let o = bin().env("TRIELLIPTIC_CATALOG", &dir).args(["qf", "picard", "--lattice", "Sigma2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["picard"]["rho"], 4);
    let files: Vec<&str> = v["manifest"]["catalogs"].as_array().unwrap().iter().map(|c| c["file"].as_str().unwrap()).collect();
    assert!(files.iter().all(|f| !f.starts_with("builtin:")), "{files:?}");
    let o = bin().env("TRIELLIPTIC_CATALOG", "/nonexistent").args(["git", "strata-dims"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exhausted_budget_is_inconclusive() {
    let o = run(&["census", "--n", "2", "--budget-seconds", "0.001"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_of(&o);
    assert_eq!(v["status"], "inconclusive");
    assert_eq!(v["reason"], "budget");
}

#[test]
fn census_for_n3_matches() {
    let out = scratch("census3.json");
    let o = run(&["census", "--n", "3", "--jobs", "2", "--out", s(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["n"], 3);
    assert_eq!(v["typeII"].as_array().unwrap().len(), 10);
    assert_eq!(v["typeIII"], 2);
    assert!(v["runtimeSec"].as_f64().unwrap() > 0.0);
    assert_eq!(v["manifest"]["jobs"], 2);
    for c in v["typeII"].as_array().unwrap() {
        for k in ["e", "rootSystem", "thetaCoeffs", "discForm"] {
            assert!(c.get(k).is_some(), "missing {k}");
        }
    }
}

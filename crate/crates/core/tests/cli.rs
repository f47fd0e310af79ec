use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ivhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ivhs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

const FERMAT_JSON: &str = r#"{"d": 4, "field": "rationals", "f_coeffs": [[4, 0, 1], [0, 4, 1]]}"#;

#[test]
fn ring_info_on_the_fermat_quartic() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fermat.json", FERMAT_JSON);
    let rep = dir.path().join("r.json");
    let out = ivhs(&["ring-info", "--f", &f, "--report", rep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&rep);
    let result = &r["runs"][0]["result"];
    assert_eq!(result["hilbert_binary"][4], 1);
    assert_eq!(result["hilbert_plane"][1], 3);
    assert_eq!(r["runs"][0]["checks"][0]["status"], "pass");
}

#[test]
fn toml_and_json_files_agree() {
    let dir = TempDir::new().unwrap();
    let j = write(&dir, "f.json", r#"{"d": 5, "f_coeffs": [[5, 0, 1], [1, 4, "3/2"], [0, 5, -2]]}"#);
    let t = write(&dir, "f.toml", "d = 5\nf_coeffs = [[5, 0, 1], [1, 4, \"3/2\"], [0, 5, -2]]\n");
    let a = ivhs(&["ikeda-verify", "--f", &j, "--report", "-"]);
    let b = ivhs(&["ikeda-verify", "--f", &t, "--report", "-"]);
    assert_eq!(a.status.code(), Some(0));
    let (a, b): (Value, Value) = (
        serde_json::from_slice(&a.stdout).unwrap(),
        serde_json::from_slice(&b.stdout).unwrap(),
    );
    assert_eq!(a["runs"][0]["f_digest"], b["runs"][0]["f_digest"]);
    assert_eq!(a["runs"][0]["result"], b["runs"][0]["result"]);
}

#[test]
fn non_squarefree_input_fails_checks() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "sq.json", r#"{"d": 4, "f_coeffs": [[4, 0, 1], [2, 2, 2], [0, 4, 1]]}"#);
    for cmd in ["ring-info", "ikeda-verify", "macaulay"] {
        let out = ivhs(&[cmd, "--f", &f]);
        assert_eq!(out.status.code(), Some(1), "{cmd}");
        assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL smooth"));
    }
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let dup = write(&dir, "dup.json", r#"{"d": 4, "f_coeffs": [[4, 0, 1], [4, 0, 2]]}"#);
    let sum = write(&dir, "sum.json", r#"{"d": 4, "f_coeffs": [[3, 0, 1]]}"#);
    let junk = write(&dir, "junk.json", "not a polynomial");
    let low = write(&dir, "low.json", r#"{"d": 3, "f_coeffs": [[3, 0, 1], [0, 3, 1]]}"#);
    let fermat = write(&dir, "fermat.json", FERMAT_JSON);
    let cases: Vec<Vec<&str>> = vec![
        vec!["ring-info", "--f", &dup],
        vec!["ring-info", "--f", &sum],
        vec!["ring-info", "--f", &junk],
        vec!["ring-info", "--f", &low],
        vec!["ring-info", "--f", "/nonexistent/f.json"],
        vec!["ring-info", "--f", &fermat, "--d", "5"],
        vec!["ring-info", "--f", &fermat, "--field", "fp:2147483647"],
        vec!["ring-info", "--random"],
        vec!["ring-info", "--d", "4"],
        vec!["ring-info", "--d", "4", "--random", "--field", "fp:100"],
        vec!["ring-info", "--d", "4", "--seed", "3"],
        vec!["koszul", "--d", "4", "--random", "--k", "0"],
        vec!["nabla-dump", "--d", "4", "--random", "--a", "0", "--p", "1", "--q", "0"],
        vec!["frobnicate"],
    ];
    for args in cases {
        assert_eq!(ivhs(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn matching_flags_are_accepted() {
    let dir = TempDir::new().unwrap();
    let fermat = write(&dir, "fermat.json", FERMAT_JSON);
    let out = ivhs(&["ring-info", "--f", &fermat, "--d", "4", "--field", "rationals"]);
    assert_eq!(out.status.code(), Some(0));
    let fp = write(&dir, "fp.json", r#"{"d": 4, "field": "fp:2147483647", "f_coeffs": [[4, 0, 1], [0, 4, "1/3"]]}"#);
    assert_eq!(ivhs(&["ikeda-verify", "--f", &fp]).status.code(), Some(0));
}

#[test]
fn quartic_certificate_carries_the_range_note() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fermat.json", FERMAT_JSON);
    let out = ivhs(&["ikeda-verify", "--f", &f, "--report", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let cert = &r["runs"][0]["result"];
    assert_eq!(cert["verdict"], "certified (s=1: outside the s >= 2 range)");
    for key in [
        "d", "field", "f_digest", "lemma_i_pass", "lemma_ii_pass", "det_lambda",
        "kernel_membership_pass", "eigenspace_dims", "annihilator_dim", "verdict", "witnesses",
    ] {
        assert!(cert.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn quintic_sweep_is_fully_certified() {
    let out = ivhs(&["ikeda-verify", "--d", "5", "--random", "--seed", "1", "--sweep", "20", "--report", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["passed_runs"], 20);
    let seeds: Vec<u64> = r["runs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|run| run["source"]["seed"].as_u64().unwrap())
        .collect();
    assert_eq!(seeds, (1..=20).collect::<Vec<_>>());
}

#[test]
fn corruption_hook_reports_witnesses() {
    let out = ivhs(&["ikeda-verify", "--d", "5", "--random", "--seed", "4", "--corrupt", "--report", "-"]);
    assert_eq!(out.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let cert = &r["runs"][0]["result"];
    assert_eq!(cert["verdict"], "not certified");
    assert!(!cert["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn koszul_commands() {
    let out = ivhs(&["koszul", "--d", "4", "--random", "--seed", "7", "--k", "1", "--report", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rep = &r["runs"][0]["result"]["report"];
    assert_eq!((rep["dim_kernel"].as_u64(), rep["dim_wedge_image"].as_u64()), (Some(3), Some(3)));
    assert_eq!(rep["equal"], true);

    let out = ivhs(&["koszul", "--d", "5", "--random", "--seed", "7", "--k", "3", "--report", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["runs"][0]["result"]["asserted"], false);
    assert_eq!(r["runs"][0]["checks"][2]["status"], "info");
}

#[test]
fn nabla_dump_base_case() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "fermat.json", FERMAT_JSON);
    let m = dir.path().join("m.json");
    let out = ivhs(&["nabla-dump", "--f", &f, "--a", "1", "--p", "1", "--q", "0", "--out", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dump = report(&m);
    assert_eq!((dump["rows"].as_u64(), dump["cols"].as_u64()), (Some(3), Some(3)));
    assert_eq!(dump["source_legend"].as_array().unwrap().len(), 3);
    // X0^2 X1^2 * Y = Y X0^2 X1^2, the third H01 basis element
    assert_eq!(dump["entries"], serde_json::json!([[2, 0, "1"]]));
    assert_eq!(dump["basis"]["h01"][2], "Y*X0^2*X1^2");
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for cmd in ["ring-info", "macaulay", "ikeda-verify", "koszul"] {
        let a = dir.path().join(format!("{cmd}-a.json"));
        let b = dir.path().join(format!("{cmd}-b.json"));
        for p in [&a, &b] {
            ivhs(&[cmd, "--d", "5", "--random", "--seed", "9", "--sweep", "3", "--report", p.to_str().unwrap()]);
        }
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap(), "{cmd}");
    }
    let seq = ivhs(&["ikeda-verify", "--d", "5", "--random", "--sweep", "4", "--sequential", "--report", "-"]);
    let par = ivhs(&["ikeda-verify", "--d", "5", "--random", "--sweep", "4", "--report", "-"]);
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v["config"] = Value::Null;
        v
    };
    assert_eq!(strip(&seq), strip(&par));
}

#[test]
fn timing_is_opt_in() {
    let out = ivhs(&["ring-info", "--d", "4", "--random", "--report", "-"]);
    assert!(!String::from_utf8_lossy(&out.stdout).contains("timing_ms"));
    let out = ivhs(&["ring-info", "--d", "4", "--random", "--timing", "--report", "-"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("timing_ms"));
}

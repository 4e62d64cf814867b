use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hamop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamop")).args(args).env_remove("HAMOP_CATALOG_DIR").output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = hamop(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hamop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn catalog_list_has_the_canonical_entries() {
    let (code, v) = json(&["catalog", "list"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = v["result"]["entries"].as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    assert!(ids.len() >= 20);
    for id in ["g1", "g2", "g3", "g4", "g5", "g6", "ex1", "ex2", "ex3", "ex4", "ex5", "ex6"] {
        assert!(ids.contains(&id), "{id}");
    }
}

#[test]
fn n5_pipeline_at_alpha_zero() {
    let (code, v) = json(&["pipeline", "n5-example", "--param", "alpha=0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["king_rank"], 14);
    assert_eq!(v["result"]["phi_dim"], 1);
    assert_eq!(v["result"]["verdict"], "hamiltonian");

    let (code, v) = json(&["pipeline", "n5-example"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["king_rank"], 15);
    assert_eq!(v["result"]["verdict"], "no-phi");
}

#[test]
fn g1_symbolic_verify() {
    let (code, v) = json(&["verify", "--metric", "catalog:g1", "--param", "c=sym"]);
    assert_eq!(code, 0);
    for check in ["killing", "nonlinear", "potemin"] {
        assert_eq!(v["result"][check]["holds"], true, "{check}");
    }
    assert_eq!(v["result"]["curvature"]["flat"], false);
    assert_eq!(v["result"]["curvature"]["cotton_nonzero"], true);

    let text = String::from_utf8(hamop(&["verify", "--metric", "catalog:g1", "--param", "c=sym"]).stdout).unwrap();
    assert!(text.contains("cotton tensor: nonzero"));
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn exit_codes() {
    // usage and parse errors
    assert_eq!(hamop(&[]).status.code(), Some(2));
    assert_eq!(hamop(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hamop(&["verify", "--metric", "catalog:nope"]).status.code(), Some(2));
    assert_eq!(hamop(&["verify", "--metric", "g1", "--param", "c"]).status.code(), Some(2));
    assert_eq!(hamop(&["verify", "--metric", "g2", "--param", "zeta=1"]).status.code(), Some(2));
    assert_eq!(hamop(&["classify", "--metric", "g1"]).status.code(), Some(2));
    assert_eq!(hamop(&["pipeline", "g1"]).status.code(), Some(2));

    // check failures
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"n": 3, "g": [["-2*u2 + u1", "u1", "0"], ["u1", "0", "0"], ["0", "0", "1"]]}"#).unwrap();
    let out = hamop(&["verify", "--metric", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("killing: fail"));
    assert_eq!(hamop(&["pipeline", "n3-case1"]).status.code(), Some(1));
    assert_eq!(hamop(&["singular", "--metric", "n4-stab14-c"]).status.code(), Some(1));
    assert_eq!(hamop(&["classify", "--metric", "g1", "--param", "c=1"]).status.code(), Some(1));

    // passes
    assert_eq!(hamop(&["classify", "--metric", "g1", "--param", "c=2"]).status.code(), Some(0));
    assert_eq!(hamop(&["hydro-check", "--system", "catalog:ex3"]).status.code(), Some(0));
    assert_eq!(hamop(&["hydro-check", "--system", "ex1", "--param", "c=2"]).status.code(), Some(0));
}

#[test]
fn classify_reports_the_segre_symbol() {
    for (id, symbol, class) in [("g2", "[(111)12]", "g2"), ("g5", "[(123)]", "g5"), ("g6", "[(222)]", "g6")] {
        let (code, v) = json(&["classify", "--metric", id]);
        assert_eq!(code, 0);
        assert_eq!(v["result"]["class_symbol"], symbol);
        assert_eq!(v["result"]["label"], class);
    }
}

#[test]
fn show_then_verify_round_trips() {
    for id in ["g1", "g3", "n4-stab14-a"] {
        let (_, shown) = json(&["catalog", "show", id]);
        let file = scratch(&format!("{id}.json"));
        std::fs::write(&file, serde_json::to_string(&shown).unwrap()).unwrap();
        let (code_file, from_file) = json(&["verify", "--metric", file.to_str().unwrap()]);
        let (code_cat, from_catalog) = json(&["verify", "--metric", &format!("catalog:{id}")]);
        assert_eq!(code_file, code_cat, "{id}");
        assert_eq!(from_file["result"], from_catalog["result"], "{id}");
    }
    let (_, shown) = json(&["catalog", "show", "n3-case3"]);
    let file = scratch("n3-case3.json");
    std::fs::write(&file, serde_json::to_string(&shown["result"]).unwrap()).unwrap();
    let (_, a) = json(&["pipeline", file.to_str().unwrap()]);
    let (_, b) = json(&["pipeline", "n3-case3"]);
    assert_eq!(a["result"], b["result"]);

    let (_, shown) = json(&["catalog", "show", "ex4"]);
    let file = scratch("ex4.json");
    std::fs::write(&file, serde_json::to_string(&shown).unwrap()).unwrap();
    let (code, v) = json(&["hydro-check", "--system", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["flow"]["holds"], true);
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["pipeline", "n3-case4", "--json"],
        vec!["verify", "--metric", "g2", "--json"],
        vec!["hydro-check", "--system", "ex2", "--json"],
        vec!["catalog", "list"],
        vec!["solve-phi", "--subspace", "n4-generic"],
    ] {
        let a = hamop(&args);
        let b = hamop(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn timings_are_opt_in() {
    let (_, v) = json(&["verify", "--metric", "g4"]);
    assert!(v.get("elapsed_ms").is_none());
    let (_, v) = json(&["verify", "--metric", "g4", "--timings"]);
    assert!(v["elapsed_ms"].is_u64());
}

#[test]
fn catalog_dir_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_hamop"))
        .args(["catalog", "list"])
        .env("HAMOP_CATALOG_DIR", scratch("missing-dir"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("metrics.json"));
}

#[test]
fn catalog_check_single_entry() {
    let (code, v) = json(&["catalog", "check", "g5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"][0]["passed"], true);
}

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_connideal"))
        .args(args)
        .env_remove("SR_MAX_ORACLE_N")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn analyze_fig1() {
    let v = json(&["analyze", "--fixture", "fig1", "--t", "4", "--no-meta"]);
    assert_eq!(v["predicted_pd"], 8);
    assert_eq!(v["predicted_reg"], 6);
    assert_eq!(v["is_chordal"], true);
    assert!(v.get("meta").is_none());
}

#[test]
fn analyze_cycle_and_zero_ideal() {
    let v = json(&["analyze", "--fixture", "cycle", "--param", "5", "--t", "3"]);
    assert_eq!(v["is_chordal"], false);
    assert_eq!(v["bight"], 2);
    assert!(v["predicted_reg"].is_null());
    assert_eq!(v["meta"]["tool"], "connideal");

    let v = json(&["analyze", "--fixture", "path", "--param", "3", "--t", "4"]);
    assert_eq!(v["zero_ideal"], true);
    assert!(v["notice"].as_str().unwrap().contains("zero ideal"));
}

#[test]
fn betti_examples() {
    let v = json(&["betti", "--fixture", "path", "--param", "4", "--t", "3", "--field", "gf2"]);
    let entries = v["betti"]["entries"].as_array().unwrap();
    let triples: Vec<(u64, u64, u64)> = entries
        .iter()
        .map(|e| (e["i"].as_u64().unwrap(), e["j"].as_u64().unwrap(), e["beta"].as_u64().unwrap()))
        .collect();
    assert_eq!(triples, [(0, 0, 1), (1, 3, 2), (2, 4, 1)]);

    let v = json(&[
        "betti", "--fixture", "clique_star", "--param", "3,2", "--t", "3", "--ideal", "clique",
        "--field", "q",
    ]);
    assert_eq!(v["betti"]["reg"], 4);
    assert_eq!(v["betti"]["field"], "Q");

    let v = json(&["betti", "--fixture", "complete", "--param", "4", "--t", "4"]);
    assert_eq!(v["betti"]["entries"].as_array().unwrap().len(), 2);
    assert_eq!(v["betti"]["entries"][1]["j"], 4);
    assert_eq!(v["invariants"]["has_linear_resolution"], true);
}

#[test]
fn betti_cap_and_force() {
    let out = run(&["betti", "--fixture", "fig1", "--t", "4"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));

    let v = json(&["betti", "--fixture", "fig1", "--t", "4", "--force", "--no-meta"]);
    assert_eq!(v["invariants"]["reg"], 6);
    assert_eq!(v["invariants"]["pd"], 8);

    let out = Command::new(env!("CARGO_BIN_EXE_connideal"))
        .args(["betti", "--fixture", "path", "--param", "4", "--t", "3"])
        .env("SR_MAX_ORACLE_N", "3")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_random_corpus() {
    let v = json(&[
        "verify", "--random", "--count", "50", "--n-max", "10", "--t", "2,3,4", "--seed", "1",
    ]);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["items"].as_array().unwrap().len(), 150);
}

#[test]
fn verify_fig1_decomposition() {
    let v = json(&[
        "verify", "--fixture", "fig1", "--t", "4", "--decompose", "5", "--order", "paper",
        "--no-meta",
    ]);
    let d = &v["decomposition"][0];
    assert_eq!(d["order"][0], serde_json::json!([3, 4, 5]));
    let records = d["identities"]["records"].as_array().unwrap();
    assert!(!records.is_empty());
    assert!(records.iter().all(|r| r["pass"] == true));
    // no C_i dominates the 14 vertices
    assert_eq!(d["dominating"]["skipped"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_cycle_notes_strictness() {
    let v = json(&["verify", "--fixture", "cycle", "--param", "5", "--t", "3"]);
    let notes = v["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("strict")));
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("not chordal")));
}

#[test]
fn reference_order_is_restricted() {
    let out = run(&[
        "verify", "--fixture", "path", "--param", "4", "--t", "3", "--decompose", "1", "--order",
        "paper",
    ]);
    assert_eq!(code(&out), 2);
    let out = run(&["verify", "--fixture", "fig1", "--t", "4", "--decompose", "6"]);
    assert_eq!(code(&out), 2, "6 is not simplicial in fig1");
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(code(&run(&["analyze", "--fixture", "nope", "--t", "3"])), 2);
    assert_eq!(code(&run(&["analyze", "--fixture", "path", "--param", "4", "--t", "1"])), 2);
    assert_eq!(code(&run(&["analyze", "--graph", "/no/such/file", "--t", "3"])), 2);
    assert_eq!(code(&run(&["analyze", "--t", "3"])), 2);
    assert_eq!(code(&run(&["betti", "--fixture", "fig1", "--t", "3", "--field", "gf4"])), 2);
    assert_eq!(code(&run(&["gen", "--n", "0"])), 2);
}

#[test]
fn gen_round_trips() {
    let out = run(&["gen", "--n", "1", "--seed", "0"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "1\n");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let p = path.to_str().unwrap();
    assert!(run(&["gen", "--n", "8", "--seed", "7", "--max-clique", "3", "--out", p])
        .status
        .success());
    let text = std::fs::read_to_string(&path).unwrap();
    let g = connideal::parse_graph(&text).unwrap();
    assert_eq!(g.to_edge_list(), text);
    assert!(connideal::graph::chordality(&g).is_chordal);
    assert_eq!(g, connideal::graph::random_chordal(8, 7, 3));

    let v = json(&["analyze", "--graph", p, "--t", "2"]);
    assert_eq!(v["is_chordal"], true);

    let bad = dir.path().join("missing").join("g.txt");
    assert_eq!(code(&run(&["gen", "--n", "3", "--out", bad.to_str().unwrap()])), 2);
}

#[test]
fn outputs_are_byte_identical_without_meta() {
    let args = [
        "verify", "--random", "--count", "10", "--t", "2,3", "--seed", "4", "--cross-field",
        "--no-meta",
    ];
    let one = run(&[&["--threads", "1"][..], &args[..]].concat());
    let many = run(&args);
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn unparsable_graph_file_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "3\n1 4\n").unwrap();
    let out = run(&["verify", "--graph", path.to_str().unwrap(), "--t", "2"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

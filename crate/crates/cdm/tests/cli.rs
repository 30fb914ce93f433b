use std::path::PathBuf;

use cdm::export::SystemJson;
use serde_json::Value;

fn data(rel: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data");
    root.join(rel).to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn cdm(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cdm").chain(args.iter().copied());
    let code = cdm::cli::run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let r = cdm(&all);
    assert_eq!(r.code, 0, "{}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

#[test]
fn encode_reports_order_and_shape() {
    let r = cdm(&["encode", &data("graphs/edge.graph")]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("order 180\n"), "{}", r.out);
    let v = json(&["encode", &data("graphs/path3.graph")]);
    assert_eq!(v["command"], "encode");
    assert_eq!(v["params"]["p"], 3);
    let r = cdm(&["encode", &data("graphs/edge_c2.json")]);
    assert_eq!(r.code, 0, "{}", r.err);
}

#[test]
fn nsubs_of_a_vertex() {
    let v = json(&["nsubs", &data("graphs/vertex.graph")]);
    let orders: Vec<u64> = v["results"].as_array().unwrap().iter().map(|s| s["order"].as_u64().unwrap()).collect();
    assert_eq!(orders, [6, 3, 1]);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "verify", "all", "--instances", "a;a-b"];
    let first = cdm(&args);
    let second = cdm(&args);
    assert_eq!(first.code, 0, "{}", first.err);
    assert_eq!(first.out, second.out);
    let export = ["--json", "export", &data("graphs/edge.graph")];
    assert_eq!(cdm(&export).out, cdm(&export).out);
}

#[test]
fn verify_rows_are_well_formed() {
    let v = json(&["verify", "easy-1", "--instances", "a;a,b"]);
    let rows = v["results"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        assert_eq!(row["lemma_id"], "easy-1");
        assert_eq!(row["status"], "PASS");
        assert!(row["counterexample"].is_null());
        assert!(row["checked_count"].as_u64().unwrap() > 0);
        assert!(row.get("elapsed").is_none());
    }
    let r = cdm(&["verify", "easy-1", "--instances", "a"]);
    assert_eq!(r.code, 0);
    assert!(r.out.lines().any(|l| l.starts_with("easy-1") && l.contains("PASS")), "{}", r.out);
}

#[test]
fn system_export_round_trips_through_decode() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edge.json");
    let r = cdm(&["export", &data("graphs/edge.graph")]);
    assert_eq!(r.code, 0, "{}", r.err);
    let doc: SystemJson = serde_json::from_str(&r.out).unwrap();
    assert_eq!(doc.params.order, 180);
    assert_eq!(doc.subgroups[0].index, 1);
    assert_eq!(doc.subgroups.last().unwrap().order, 1);
    let total: usize = doc.subgroups.iter().map(|s| s.index).sum();
    assert_eq!(doc.elements.len(), total);
    std::fs::write(&path, &r.out).unwrap();
    let back = cdm(&["decode", path.to_str().unwrap()]);
    assert_eq!(back.code, 0, "{}", back.err);
    assert_eq!(back.out.lines().filter(|l| l.starts_with("vertex")).count(), 2);
    assert_eq!(back.out.lines().filter(|l| l.starts_with("edge")).count(), 1);
}

#[test]
fn tampered_export_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let mut v = json(&["export", &data("graphs/vertex.graph")]);
    v["subgroups"][1]["order"] = 2.into();
    std::fs::write(&path, v.to_string()).unwrap();
    let r = cdm(&["decode", path.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.err.starts_with("error:"), "{}", r.err);
}

#[test]
fn dot_export_draws_covering_arrows() {
    let r = cdm(&["export", "--dot", &data("graphs/vertex.graph")]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("digraph classes {"));
    // D_3 has the chain 1 < C_3 < D_3: two arrows.
    assert_eq!(r.out.matches("->").count(), 2);
}

#[test]
fn decode_agrees_with_the_input_graph() {
    for g in ["graphs/edge.graph", "graphs/pair.graph", "graphs/path3.graph"] {
        let plain = cdm(&["decode", &data(g)]);
        assert_eq!(plain.code, 0, "{}", plain.err);
        let input = std::fs::read_to_string(data(g)).unwrap();
        let edges = |s: &str| s.lines().filter(|l| l.trim_start().starts_with("edge")).count();
        assert_eq!(edges(&plain.out), edges(&input), "{g}");
    }
    let oracle = cdm(&["decode", "--oracle", &data("graphs/edge.graph")]);
    assert_eq!(oracle.code, 0, "{}", oracle.err);
    assert!(oracle.out.contains("edge a b"), "{}", oracle.out);
}

#[test]
fn eval_and_gcl() {
    let r = cdm(&["eval", &data("graphs/vertex.graph"), "-f", &data("formulas/vertex.formula")]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("x (1 solutions)"), "{}", r.out);
    let v = json(&["eval", &data("graphs/edge_c2.json"), "-f", &data("formulas/phi1.formula")]);
    let classes: Vec<u64> = v["results"][0]["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t[0].as_u64().unwrap())
        .collect();
    let widths = cdm(&["width", &data("graphs/edge_c2.json")]);
    let width_one = widths.out.lines().filter(|l| l.contains(" width 1 ")).count();
    // each width-1 class of index 2 contributes its two cosets
    assert_eq!(classes.len(), 2 * width_one);
    let r = cdm(&["gcl", &data("graphs/vertex.graph"), "--elements", "0"]);
    assert_eq!(r.code, 0, "{}", r.err);
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "vertex a\nedge a b\n").unwrap();
    let r = cdm(&["encode", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.err.starts_with("parse:") && r.err.contains("2"), "{}", r.err);

    let r = cdm(&["verify", "no-such-lemma"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("no-such-lemma"));

    let r = cdm(&["gcl", &data("graphs/vertex.graph"), "--elements", "999"]);
    assert_eq!(r.code, 2);

    assert_eq!(cdm(&["--p", "4", "encode", &data("graphs/vertex.graph")]).code, 2);
    assert_eq!(cdm(&["encode", "/nonexistent/graph"]).code, 2);
    assert_eq!(cdm(&["frobnicate"]).code, 2);
}

#[test]
fn budget_errors_exit_with_three() {
    let r = cdm(&["--max-order", "100", "nsubs", &data("graphs/triangle.graph")]);
    assert_eq!(r.code, 3);
    assert!(r.err.starts_with("budget:"), "{}", r.err);
}

#[test]
fn help_goes_to_stdout() {
    let r = cdm(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("verify"));
}

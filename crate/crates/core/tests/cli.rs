//! CLI integration: exit-code contract, file round-trips, and the
//! plan -> emit-recipe -> construct -> analyze pipeline.

use std::path::Path;
use std::process::{Command, Output};

use ramsey_local::graph::Graph;
use ramsey_local::io::{from_graph6, to_edge_list, to_graph6};

fn rf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rf"))
        .env_remove("RF_SEED")
        .args(args)
        .output()
        .expect("binary runs")
}

fn rf_json(args: &[&str]) -> serde_json::Value {
    let out = rf(args);
    assert!(
        out.status.success(),
        "rf {args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn construct_writes_graph6_and_roundtrips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.g6");
    let report = rf_json(&[
        "construct", "--gnp", "16", "0.5", "--seed", "7", "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(report["results"]["vertices"], 16);
    assert_eq!(report["seed"], 7);
    assert_eq!(report["provenance"]["recipe"]["seed"], 7);

    // re-reading the file and re-encoding reproduces it byte for byte
    let text = std::fs::read_to_string(&path).unwrap();
    let graph = from_graph6(&text).unwrap();
    assert_eq!(to_graph6(&graph).unwrap() + "\n", text);
    assert_eq!(graph.edge_count(), report["results"]["edges"].as_u64().unwrap() as usize);
}

#[test]
fn construct_recipe_pipeline_and_edge_list_output() {
    let dir = tempfile::tempdir().unwrap();
    let recipe = dir.path().join("r.json");
    std::fs::write(
        &recipe,
        r#"{"steps":[{"gnp":{"n":6,"p":0.5}},{"scramble":{"p":0.2}},
            {"lex_power":{"ell":3}},{"take_subgraph":{"n":100}}],"seed":42}"#,
    )
    .unwrap();
    let out_path = dir.path().join("g.el");
    let report = rf_json(&[
        "construct", "--recipe", recipe.to_str().unwrap(), "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(report["results"]["vertices"], 100);
    assert_eq!(report["results"]["format"], "edges");
    assert_eq!(report["provenance"]["steps"].as_array().unwrap().len(), 4);

    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.starts_with("100 "));
}

fn write_graph(path: &Path, g: &Graph) {
    std::fs::write(path, to_edge_list(g)).unwrap();
}

#[test]
fn analyze_exact_c5_and_k3() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = dir.path().join("c5.el");
    write_graph(&c5, &Graph::cycle(5));
    let report = rf_json(&["analyze", c5.to_str().unwrap(), "--r", "2", "--mode", "exact"]);
    assert_eq!(report["results"]["ramsey"]["value"], 3);
    assert_eq!(report["results"]["witness_valid"], true);

    let k3 = dir.path().join("k3.el");
    write_graph(&k3, &Graph::complete(3));
    let report = rf_json(&["analyze", k3.to_str().unwrap(), "--r", "2", "--mode", "exact"]);
    assert_eq!(report["results"]["ramsey"]["value"], 4);
    assert_eq!(report["results"]["ramsey"]["sentinel"], true);
    assert_eq!(report["results"]["ramsey"]["kind"], "independent");
}

#[test]
fn analyze_sample_frozen_seed_sees_no_failures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g256.g6");
    let g = ramsey_local::gnp(256, 0.5, ramsey_local::Seed(3));
    std::fs::write(&path, to_graph6(&g).unwrap()).unwrap();
    let report = rf_json(&[
        "analyze", path.to_str().unwrap(), "--r", "3", "--mode", "sample",
        "--m", "60", "--trials", "200", "--seed", "3",
    ]);
    assert_eq!(report["results"]["ramsey"]["frequency"], 0.0);
    assert_eq!(report["results"]["ramsey"]["trials"], 200);
}

#[test]
fn analyze_fractional_r_is_ceiled() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = dir.path().join("c5.el");
    write_graph(&c5, &Graph::cycle(5));
    let a = rf_json(&["analyze", c5.to_str().unwrap(), "--r", "1.5", "--mode", "exact"]);
    assert_eq!(a["results"]["ramsey"]["r"], 2);
}

#[test]
fn plan_base_case_covers_the_target() {
    let report = rf_json(&["plan", "--N", "2^1024", "--k", "1024", "--t", "2"]);
    let base = &report["results"]["plan"]["base"];
    let ell = base["plan"]["ell"].as_f64().unwrap();
    let log_n = base["plan"]["log_n"].as_f64().unwrap();
    assert!(ell * log_n >= 1024.0, "ell log n = {}", ell * log_n);
    assert_eq!(report["results"]["plan"]["t"], 2);
    assert_eq!(report["results"]["plan"]["vacuous"], false);
}

#[test]
fn plan_picks_t_from_double_logs() {
    // log log N = 16, log log k = 4 -> t = 2
    let report = rf_json(&["plan", "--N", "2^(2^16)", "--k", "2^16"]);
    assert_eq!(report["results"]["plan"]["t"], 2);

    // vacuous when the double logs agree
    let report = rf_json(&["plan", "--N", "2^(2^16)", "--k", "2^(2^16)"]);
    assert_eq!(report["results"]["plan"]["vacuous"], true);

    let out = rf(&["plan", "--N", "2^(2^16)", "--k", "2^(2^16)"]);
    assert_eq!(code(&out), 0, "vacuous plans still exit 0");
}

#[test]
fn plan_explain_lists_formulas() {
    let report = rf_json(&["plan", "--N", "2^1024", "--k", "1024", "--t", "2", "--explain"]);
    let formulas = report["results"]["formulas"].as_array().unwrap();
    assert!(formulas.iter().any(|f| f.as_str().unwrap().contains("t^(2t)")));
}

#[test]
fn plan_emit_recipe_construct_analyze_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let recipe = dir.path().join("plan-recipe.json");
    let report = rf_json(&[
        "plan", "--N", "2^(2^36)", "--k", "2^(2^4)", "--seed", "11",
        "--emit-recipe", recipe.to_str().unwrap(),
    ]);
    assert_eq!(report["results"]["plan"]["t"], 3);
    assert_eq!(
        report["results"]["plan"]["levels"].as_array().unwrap().len(),
        1
    );

    let graph_file = dir.path().join("surrogate.g6");
    let built = rf_json(&[
        "construct", "--recipe", recipe.to_str().unwrap(), "-o",
        graph_file.to_str().unwrap(),
    ]);
    let n = built["results"]["vertices"].as_u64().unwrap();
    assert!(n >= 128, "surrogate has {n} vertices");

    let analyzed = rf_json(&[
        "analyze", graph_file.to_str().unwrap(), "--r", "2", "--mode", "sample",
        "--m", "30", "--trials", "30", "--seed", "1",
    ]);
    assert!(analyzed["results"]["ramsey"]["frequency"].is_number());
}

#[test]
fn witness_extraction_with_certified_ladder() {
    let dir = tempfile::tempdir().unwrap();
    let ladder = dir.path().join("ladder.json");
    // gnp(8, 0.5, seed 1) has m_G(2) <= 6 (checked by the library's own
    // exact search in other tests); claim a generous 6 here
    std::fs::write(&ladder, r#"{"entries":[{"r":2,"m":6}],"m_top":9}"#).unwrap();
    let report = rf_json(&[
        "witness", "--gnp", "8", "0.5", "--seed", "1", "--ell", "3", "--m", "200",
        "--subset-seed", "11", "--ladder", ladder.to_str().unwrap(),
        "--kind", "clique",
    ]);
    assert_eq!(report["results"]["kind"], "clique");
    assert_eq!(report["results"]["valid"], true);
    let size = report["results"]["size"].as_u64().unwrap();
    let floor = report["results"]["floor_guarantee"].as_f64().unwrap();
    assert!(size as f64 >= floor);
    assert!(report["results"]["ladder_used"]["entries"].is_array());
}

#[test]
fn witness_uncertified_ladder_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let ladder = dir.path().join("bad-ladder.json");
    // m_2 = 2 claims every pair holds both K_2 and I_2: false for any
    // graph with an edge or a non-edge
    std::fs::write(&ladder, r#"{"entries":[{"r":2,"m":2}],"m_top":9}"#).unwrap();
    let out = rf(&[
        "witness", "--gnp", "8", "0.5", "--seed", "1", "--ell", "2", "--m", "50",
        "--subset-seed", "11", "--ladder", ladder.to_str().unwrap(),
        "--kind", "clique",
    ]);
    assert_eq!(code(&out), 4, "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn witness_bad_set_verified() {
    let report = rf_json(&[
        "witness", "--bad-set", "--gnp", "64", "0.5", "--seed", "9", "--r", "3",
    ]);
    assert_eq!(report["results"]["valid"], true);
    let size = report["results"]["size"].as_u64().unwrap();
    assert!(size >= 5, "size {size}");
    assert_eq!(report["results"]["hypothesis_ok"], false); // 64 < 4*3*log2(64)
}

#[test]
fn exit_code_contract() {
    // 1: usage
    assert_eq!(code(&rf(&["construct"])), 1);
    assert_eq!(code(&rf(&["analyze"])), 1);
    assert_eq!(code(&rf(&["nonsense"])), 1);

    // 2: unreadable/unparseable input
    assert_eq!(code(&rf(&["analyze", "/no/such/file.g6", "--r", "2"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    assert_eq!(code(&rf(&["construct", "--recipe", bad.to_str().unwrap()])), 2);

    // 3: cap exceeded
    assert_eq!(
        code(&rf(&["construct", "--gnp", "50", "0.5", "--seed", "1", "--cap", "10"])),
        3
    );
    let c = dir.path().join("k20.el");
    write_graph(&c, &Graph::complete(20));
    assert_eq!(
        code(&rf(&["analyze", c.to_str().unwrap(), "--r", "2", "--mode", "exact"])),
        3
    );

    // 4: ladder problems (malformed file)
    let l = dir.path().join("l.json");
    std::fs::write(&l, r#"{"entries":[],"m_top":4}"#).unwrap();
    assert_eq!(
        code(&rf(&[
            "witness", "--gnp", "8", "0.5", "--ell", "2", "--m", "10",
            "--subset-seed", "1", "--ladder", l.to_str().unwrap(), "--kind", "clique",
        ])),
        4
    );

    // help exits 0
    assert_eq!(code(&rf(&["--help"])), 0);
}

#[test]
fn rf_seed_env_is_the_default_seed() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.g6");
    let b = dir.path().join("b.g6");
    let out = Command::new(env!("CARGO_BIN_EXE_rf"))
        .env("RF_SEED", "7")
        .args(["construct", "--gnp", "12", "0.5", "-o", a.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let out = rf(&["construct", "--gnp", "12", "0.5", "--seed", "7", "-o", b.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        "RF_SEED and --seed disagree"
    );
}

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn carowei(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carowei")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn bounds_on_turan_tight_file() {
    let dir = tempfile::tempdir().unwrap();
    let gen = carowei(&["bounds", "--gen", "turan-tight:3"]);
    let report = json(&gen);
    assert_eq!(report["bounds"]["turan_exact"], "24/7");
    assert_eq!(report["bounds"]["caro_wei_exact"], "9/2");
    assert_eq!(report["alpha"], 7);
    assert_eq!(report["version"], env!("CARGO_PKG_VERSION"));

    let k4 = write(dir.path(), "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let report = json(&carowei(&["bounds", "--graph", &k4]));
    assert_eq!(report["bounds"]["turan_exact"], "1");
    assert_eq!(report["bounds"]["caro_wei_exact"], "1");
}

#[test]
fn weighted_single_edge_bound() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "e.txt", "2 1\n0 1\n");
    let w = write(dir.path(), "w.txt", "3\n1\n");
    let report = json(&carowei(&["bounds", "--graph", &g, "--weights", &w]));
    assert_eq!(report["bounds"]["weighted_nbhd"], 2.5);
    assert_eq!(report["weighted"], true);
}

#[test]
fn run_reports_and_stamps() {
    let report = json(&carowei(&["run", "--gen", "clique:5", "--alg", "greedy-min", "--seed", "9"]));
    assert_eq!(report["estimate"]["mean"], 1.0);
    assert_eq!(report["seed"], 9);
    assert_eq!(report["config"]["source"]["gen"], "clique:5");
    assert_eq!(report["within_guarantee"], true);

    let report = json(&carowei(&["run", "--gen", "turan-tight:3", "--alg", "boppana", "--trials", "20000"]));
    let mean = report["estimate"]["mean"].as_f64().unwrap();
    let stderr = report["estimate"]["stderr"].as_f64().unwrap();
    assert!((mean - 4.5).abs() <= 4.0 * stderr);
    assert!(report["achieved_ratio"].as_f64().unwrap() <= 2.0 + report["ratio_tolerance"].as_f64().unwrap());
}

#[test]
fn run_is_reproducible() {
    let args = ["run", "--gen", "gnp:30,0.2", "--alg", "selkow", "--trials", "500", "--seed", "4"];
    assert_eq!(carowei(&args).stdout, carowei(&args).stdout);
}

#[test]
fn run_without_alpha_on_large_graph() {
    let out = carowei(&["run", "--gen", "gnp:80,0.05", "--alg", "boppana", "--trials", "100"]);
    let report = json(&out);
    assert!(report["alpha"].is_null());
    assert!(report["notice"].is_string());
}

#[test]
fn tight_families() {
    let r = json(&carowei(&["tight", "--family", "turan", "--delta", "3"]));
    assert_eq!(r["value_exact"], "24/7");
    assert_eq!(r["tight"], true);

    let r = json(&carowei(&["tight", "--family", "weighted-knn", "--delta", "3", "--q", "9", "--trials", "50000"]));
    assert!((r["predicted_ratio"].as_f64().unwrap() - 3.6).abs() < 1e-12);
    assert_eq!(r["tight"], true);

    let out = carowei(&["tight", "--family", "moebius", "--delta", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_csv_header() {
    let out = carowei(&["sweep-rho", "--from", "2", "--to", "20"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("delta,cw_ratio,turan_ratio,rho,argmin_x,rho_over_delta_plus_1"));
    let rows: Vec<Vec<f64>> = lines
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 19);
    assert!((rows[0][5] - 0.562).abs() < 1e-3);
    assert!(rows.windows(2).all(|w| w[1][5] <= w[0][5]));
    assert!(text.lines().last().unwrap().starts_with("# {\"version\""));

    let out = carowei(&["sweep-rho", "--from", "2", "--to", "3", "--with-asymptote"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().ends_with(",asymptote"));
}

#[test]
fn stream_is_order_invariant_and_matches_run() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let b = write(dir.path(), "b.txt", "4 4\n2 3\n3 0\n0 1\n1 2\n");
    let log = dir.path().join("ev.jsonl");
    for seed in ["1", "2", "3"] {
        let ra = json(&carowei(&[
            "stream", "--graph", &a, "--seed", seed, "--evictions", log.to_str().unwrap(),
        ]));
        let rb = json(&carowei(&["stream", "--graph", &b, "--seed", seed]));
        assert_eq!(ra["solution"], rb["solution"]);
        let size = ra["size"].as_u64().unwrap();
        assert!(size == 1 || size == 2);
        let events: Vec<Value> = std::fs::read_to_string(&log)
            .unwrap()
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(events.len(), 4);
        assert!(events.iter().all(|e| e["edge"].is_array() && (e["evicted"].is_null() || e["evicted"].is_u64())));

        let sim = json(&carowei(&["simulate", "--graph", &a, "--seed", seed]));
        assert_eq!(sim["solution"], ra["solution"]);
        assert_eq!(sim["matches_library"], true);
    }
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "3 1\n0 7\n");
    assert_eq!(carowei(&["bounds", "--graph", &bad]).status.code(), Some(1));
    assert_eq!(carowei(&["bounds", "--graph", "/nonexistent/graph"]).status.code(), Some(1));
    assert_eq!(carowei(&["bounds"]).status.code(), Some(1));
    assert_eq!(carowei(&["run", "--gen", "clique:3", "--alg", "nope"]).status.code(), Some(1));
    assert_eq!(carowei(&["run", "--gen", "clique:3"]).status.code(), Some(1));
    let w = write(dir.path(), "w.txt", "1\n2\n");
    let g = write(dir.path(), "g.txt", "3 1\n0 1\n");
    assert_eq!(carowei(&["bounds", "--graph", &g, "--weights", &w]).status.code(), Some(1));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let status = carowei(&["bounds", "--gen", "petersen", "--out", out.to_str().unwrap()]).status;
    assert!(status.success());
    let report: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(report["bounds"]["n"], 10);
}

#[test]
fn simulate_demo_views_match() {
    let r = json(&carowei(&["simulate", "--demo", "3", "--trials", "2000"]));
    assert_eq!(r["clique"]["view_degree"], r["bipartite"]["view_degree"]);
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name).to_string_lossy().into_owned()
}

fn tempoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tempoc")).args(args).env_remove("TEMPOC_BUDGET_EDGES").output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn solve(problem: &str, method: &str, file: &str) -> Value {
    json(&tempoc(&["solve", "--problem", problem, "--method", method, "--in", &corpus(file)]))
}

#[test]
fn k2_cover_is_one_for_every_method() {
    for method in ["brute", "fpt", "greedy"] {
        assert_eq!(solve("cover", method, "k2.tg")["value"], 1, "{method}");
    }
}

#[test]
fn fpt_agrees_with_brute_on_bundled_instances() {
    for file in ["random6.tg", "random8.tg", "spider.tg", "inapprox2.tg"] {
        for problem in ["cover", "matching"] {
            let brute = solve(problem, "brute", file);
            let fpt = solve(problem, "fpt", file);
            assert_eq!(brute["value"], fpt["value"], "{file} {problem}");
            assert!(fpt["width"].as_u64().is_some());
        }
    }
}

#[test]
fn greedy_reports_bound_factor() {
    let r = solve("cover", "greedy", "spider.tg");
    // tau = 3: 2 * (1 + 1/2 + 1/3)
    assert!((r["boundFactor"].as_f64().unwrap() - 11.0 / 3.0).abs() < 1e-9);
    assert_eq!(r["exact"], false);
    assert!(r["perStep"].is_array());
}

#[test]
fn gen_sat_cover_writes_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.tg");
    let o = tempoc(&["gen", "sat-cover", "--formula", &corpus("3sat22.cnf"), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let marks = std::fs::read_to_string(dir.path().join("g.tg.marks")).unwrap();
    assert_eq!(marks.lines().next(), Some("r sat-cover 39"));
    assert_eq!(marks.lines().filter(|l| l.starts_with("m ")).count(), 12);
}

#[test]
fn gen_random_is_reproducible() {
    let args = ["gen", "random", "--n", "9", "--p", "0.5", "--tau", "4", "--q", "0.4", "--seed", "42"];
    let a = tempoc(&args);
    let b = tempoc(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut other = args;
    other[11] = "43";
    assert_ne!(tempoc(&other).stdout, a.stdout);
}

#[test]
fn gen_rejects_bad_parameters() {
    let o = tempoc(&["gen", "random", "--n", "3", "--p", "1.5", "--tau", "2", "--q", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_inapprox_with_two_sets_has_ten_edges() {
    let o = tempoc(&["gen", "inapprox", "--sets", &corpus("inapprox2.sets"), "--k", "1"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 10);
    assert_eq!(String::from_utf8(o.stderr).unwrap().lines().next(), Some("r inapprox 6"));
}

#[test]
fn verify_rejects_one_edge_cover_of_path() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("s.txt");
    std::fs::write(&sol, "s cover 1\ne 1 2\n").unwrap();
    let o = tempoc(&["verify", "--in", &corpus("path3.tg"), "--solution", sol.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["ok"], false);
    assert_eq!(r["uncovered"], serde_json::json!([[3, 1]]));
}

#[test]
fn decomp_of_tree_has_width_one() {
    let path = corpus("spider.tg");
    assert_eq!(json(&tempoc(&["decomp", "--in", &path]))["width"], 1);
    assert_eq!(json(&tempoc(&["decomp", "--in", &path, "--nice"]))["width"], 1);
}

#[test]
fn decomposition_file_feeds_fpt() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("d.txt");
    let file = corpus("random6.tg");
    json(&tempoc(&["decomp", "--in", &file, "--mode", "exact", "--out", d.to_str().unwrap()]));
    let r = json(&tempoc(&["solve", "--problem", "cover", "--method", "fpt", "--in", &file, "--decomp", d.to_str().unwrap()]));
    assert_eq!(r["value"], solve("cover", "brute", "random6.tg")["value"]);
    // A decomposition of a different graph is rejected as bad input.
    let wrong = dir.path().join("w.txt");
    std::fs::write(&wrong, "b 0 bag 1,2\n").unwrap();
    let o = tempoc(&["solve", "--problem", "cover", "--method", "fpt", "--in", &file, "--decomp", wrong.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let o = tempoc(&["solve", "--problem", "cover", "--method", "brute", "--in", &file, "--decomp", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dump_dp_writes_entries() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("dp.txt");
    json(&tempoc(&["solve", "--problem", "matching", "--method", "fpt", "--in", &corpus("k2.tg"), "--dump-dp", dump.to_str().unwrap()]));
    let text = std::fs::read_to_string(dump).unwrap();
    assert!(text.lines().all(|l| l.split_whitespace().count() == 4));
    assert!(!text.is_empty());
}

#[test]
fn time_limit_enables_search_beyond_cap() {
    let o = tempoc(&["solve", "--problem", "matching", "--method", "brute", "--in", &corpus("ladder40.tg")]);
    assert_eq!(o.status.code(), Some(4));
    let r = json(&tempoc(&[
        "solve", "--problem", "matching", "--method", "brute", "--in", &corpus("ladder40.tg"), "--time-limit", "30",
    ]));
    assert_eq!(r["value"], solve("matching", "fpt", "ladder40.tg")["value"]);
}

#[test]
fn bench_snapshot_ratio_within_tau() {
    let dir: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let o = tempoc(&["bench", "--dir", dir.to_str().unwrap(), "--problem", "matching", "--json"]);
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    let names: Vec<&str> = rows.iter().map(|r| r["instance"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    let mut checked = 0;
    for r in rows.iter().filter(|r| r["method"] == "snapshot") {
        let tau = r["result"]["tau"].as_f64().unwrap();
        if let Some(ratio) = r["ratio"].as_f64() {
            assert!(ratio <= tau + 1e-9, "{r}");
            checked += 1;
        }
    }
    assert!(checked >= 10);
}

#[test]
fn help_documents_schema() {
    let o = tempoc(&["solve", "--help"]);
    let text = String::from_utf8(o.stdout).unwrap();
    for field in ["boundFactor", "wallMs", "verified", "width"] {
        assert!(text.contains(field), "{field}");
    }
}

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_grascluster"));
    for (k, _) in std::env::vars() {
        if k.starts_with("GRASCLUSTER_") {
            c.env_remove(k);
        }
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn grascluster")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&o.stdout),
            String::from_utf8_lossy(&o.stderr)
        )
    })
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn seed_akn_3_8_labels() {
    let o = run(&["seed", "3", "8", "--akn"]);
    assert!(o.status.success());
    let v = json_of(&o);
    assert_eq!(v["schema"], "grascluster.seed/1");
    let mut got = strs(&v["cluster"]);
    got.sort();
    let mut want: Vec<String> = ["578", "158", "148", "124", "568", "458", "145", "134"]
        .iter()
        .map(|d| {
            let mut c: Vec<char> = d.chars().collect();
            c.sort();
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("p[{}]", body.join(","))
        })
        .collect();
    want.sort();
    assert_eq!(got, want);
    assert_eq!(v["coefficients"].as_array().unwrap().len(), 8);
}

#[test]
fn seed_variants() {
    let v = json_of(&run(&["seed", "2", "6", "--triangulation", "fan"]));
    assert_eq!(v["rank"], 3);
    let v = json_of(&run(&["seed", "--k", "3", "--n", "5"]));
    assert_eq!(v["rank"], 2);
    let o = run(&["seed", "3", "8", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 17);
}

#[test]
fn usage_errors_exit_nonzero() {
    assert_eq!(run(&["seed", "3", "4"]).status.code(), Some(2));
    assert_eq!(run(&["seed", "3"]).status.code(), Some(2));
    assert_eq!(run(&["seed", "3", "7", "--triangulation", "fan"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "tables"]).status.code(), Some(2));
    let o = run(&["explore", "--seed", "/nonexistent/seed.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn explore_g37_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("g37.cache");
    let c = cache.to_str().unwrap();
    let a = run(&["explore", "--k", "3", "--n", "7", "--cache", c]);
    assert!(a.status.success());
    assert!(cache.exists());
    let v = json_of(&a);
    assert_eq!(v["closed"], true);
    assert_eq!(v["variable_count"], 42);
    assert_eq!(v["plucker_count"], 28);
    assert_eq!(v["non_plucker_count"], 14);
    assert_eq!(v["seed_count"], 833);
    let b = run(&["explore", "--k", "3", "--n", "7", "--cache", c]);
    assert_eq!(a.stdout, b.stdout);
    let fresh = run(&["explore", "--k", "3", "--n", "7"]);
    assert_eq!(a.stdout, fresh.stdout);
}

#[test]
fn explore_from_seed_file() {
    let dir = tempfile::tempdir().unwrap();
    let seed = dir.path().join("s.json");
    let o = run(&["seed", "2", "7", "--triangulation", "zigzag", "--out", seed.to_str().unwrap()]);
    assert!(o.status.success());
    let v = json_of(&run(&["explore", "--seed", seed.to_str().unwrap()]));
    assert_eq!(v["closed"], true);
    assert_eq!(v["seed_count"], 42);
    assert_eq!(v["variable_count"], 14);
}

#[test]
fn explore_infinite_under_caps() {
    let o = run(&["explore", "--k", "3", "--n", "9", "--max-seeds", "300"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["closed"], false);
    assert_eq!(v["seed_count"], 300);
}

#[test]
fn classify_cases() {
    let v = json_of(&run(&["classify", "--k", "3", "--n", "6"]));
    assert_eq!(v["finite"], true);
    assert_eq!(v["type"], "D4");
    assert_eq!(v["path"], serde_json::json!([4, 2, 4, 1]));

    let v = json_of(&run(&["classify", "--k", "4", "--n", "8"]));
    assert_eq!(v["finite"], false);
    assert_eq!(v["certificate"]["kind"], "affine-subgraph");
    assert!(v["certificate"]["affine_type"].as_str().unwrap().starts_with('~'));

    let v = json_of(&run(&["classify", "--k", "2", "--n", "9"]));
    assert_eq!(v["finite"], true);
    assert_eq!(v["type"], "A6");
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "tables", "--case", "d4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["passed"], true);
    assert_eq!(v["details"]["exact_matches"], 16);

    let o = run(&["verify", "schur", "--cases", "4", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(0));

    // the literal compound-A identity is off by a sign
    let o = run(&["verify", "determinants", "--trials", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json_of(&o);
    let failed: Vec<&str> = v["reports"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["failures"].as_u64() != Some(0))
        .map(|r| r["check"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["compound-A"]);
    assert!(v["reports"][2]["witness"].is_string());
}

#[test]
fn verify_positivity_and_toric() {
    let o = run(&["verify", "positivity", "--k", "2", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["reports"].as_array().unwrap().len(), 2);
    let o = run(&["verify", "toric", "--k", "3", "--n", "6", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0));
}

fn manifest_at(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn manifest_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let m1 = dir.path().join("m1.json");
    let m2 = dir.path().join("m2.json");
    let args = ["verify", "plucker", "--k", "2", "--n", "6", "--rng-seed", "7", "--jobs", "2"];
    let a = bin().args(args).args(["--manifest", m1.to_str().unwrap()]).output().unwrap();
    let b = bin().args(args).args(["--manifest", m2.to_str().unwrap()]).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let (x, y) = (manifest_at(&m1), manifest_at(&m2));
    assert_eq!(x["schema"], "grascluster.manifest/1");
    assert_eq!(x["command"], "verify");
    assert_eq!(x["rng_seed"], 7);
    assert_eq!(x["exit_code"], 0);
    assert_eq!(x["outputs"], y["outputs"]);
    assert_eq!(x["outputs"][0]["sha256"].as_str().unwrap().len(), 64);
    assert!(x["finished_unix"].as_f64() >= x["started_unix"].as_f64());
}

#[test]
fn env_prefix_overrides_defaults() {
    let o = bin()
        .args(["verify", "schur"])
        .env("GRASCLUSTER_SCHUR_CASES", "2")
        .env("GRASCLUSTER_TRIALS", "3")
        .env("GRASCLUSTER_FORMAT", "csv")
        .output()
        .unwrap();
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("schur-analogue,3,0,true"));
}

#[test]
fn manifest_on_stderr_by_default() {
    let o = run(&["seed", "2", "5"]);
    let err = String::from_utf8(o.stderr).unwrap();
    let m: Value = serde_json::from_str(err.lines().last().unwrap()).unwrap();
    assert_eq!(m["command"], "seed");
    assert_eq!(m["outputs"][0]["path"], "<stdout>");
}

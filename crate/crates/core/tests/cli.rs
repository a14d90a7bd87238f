use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn normgraph(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normgraph"))
        .args(args)
        .env("NORMGRAPH_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn sieve_writes_csv_cache() {
    let dir = TempDir::new().unwrap();
    let o = normgraph(dir.path(), &["sieve", "--limit", "150"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("7 37 139"));
    let csv: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    assert_eq!(csv.len(), 1);
    let text = fs::read_to_string(&csv[0]).unwrap();
    assert!(text.starts_with("p,qualifying,reason\n2,false,"));
    assert!(text.contains("\n139,true,\n"));
}

#[test]
fn witness_round_trip_through_verify() {
    let dir = TempDir::new().unwrap();
    let o = normgraph(dir.path(), &["--format", "json", "--no-cache", "witness46", "--p", "37"]);
    assert_eq!(o.status.code(), Some(0));
    let json = stdout(&o);
    let path = dir.path().join("w.json");
    fs::write(&path, &json).unwrap();
    let ok = normgraph(dir.path(), &["verify", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    assert!(stdout(&ok).contains("adjacency 24/24, identities 24/24 PASS"));

    let edited = json.replacen("\"a\":3", "\"a\":4", 1);
    assert_ne!(edited, json);
    fs::write(&path, edited).unwrap();
    assert_eq!(normgraph(dir.path(), &["verify", path.to_str().unwrap()]).status.code(), Some(1));

    fs::write(&path, &json[..json.len() / 2]).unwrap();
    assert_eq!(normgraph(dir.path(), &["verify", path.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        normgraph(dir.path(), &["verify", dir.path().join("missing.json").to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn general_witness_round_trip() {
    let dir = TempDir::new().unwrap();
    let o = normgraph(
        dir.path(),
        &["--format", "json", "witness-general", "--t", "4", "--m", "2", "--limit", "20"],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for key in ["t", "m", "p", "r", "thetas", "zeta", "A", "B", "verified"] {
        assert!(keys.contains(&key), "missing {key}");
    }
    assert_eq!(v["verified"], true);
    let path = dir.path().join("g.json");
    fs::write(&path, stdout(&o)).unwrap();
    assert_eq!(normgraph(dir.path(), &["verify", path.to_str().unwrap()]).status.code(), Some(0));

    let mut tampered = v.clone();
    tampered["r"] = serde_json::json!(v["r"].as_u64().unwrap() + 1);
    fs::write(&path, tampered.to_string()).unwrap();
    assert_eq!(normgraph(dir.path(), &["verify", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn cache_hits_are_reverified() {
    let dir = TempDir::new().unwrap();
    let first = normgraph(dir.path(), &["--format", "json", "witness46", "--p", "7"]);
    assert_eq!(first.status.code(), Some(0));
    assert!(!stderr(&first).contains("cache hit"));
    let second = normgraph(dir.path(), &["--format", "json", "witness46", "--p", "7"]);
    assert!(stderr(&second).contains("cache hit, re-verified"));
    assert_eq!(first.stdout, second.stdout);

    // corrupt the cached witness: it must be rebuilt, not trusted
    let cached: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap().to_str().unwrap().starts_with("witness46-"))
        .collect();
    assert_eq!(cached.len(), 1);
    let text = fs::read_to_string(&cached[0]).unwrap();
    fs::write(&cached[0], text.replacen("\"a\":3", "\"a\":2", 1)).unwrap();
    let third = normgraph(dir.path(), &["--format", "json", "witness46", "--p", "7"]);
    assert!(!stderr(&third).contains("cache hit"));
    assert_eq!(first.stdout, third.stdout);

    let other = TempDir::new().unwrap();
    let flag = normgraph(
        dir.path(),
        &["--cache-dir", other.path().to_str().unwrap(), "census", "--p", "3", "--t", "3"],
    );
    assert_eq!(flag.status.code(), Some(0));
    assert_eq!(fs::read_dir(other.path()).unwrap().count(), 1);
}

#[test]
fn census_examples() {
    let dir = TempDir::new().unwrap();
    for (p, t, bound) in [("3", "4", 6u64), ("5", "3", 2)] {
        let o = normgraph(dir.path(), &["--format", "json", "census", "--p", p, "--t", t]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert!(v["max"].as_u64().unwrap() <= bound);
        assert_eq!(v["mode"], "exhaustive");
    }
    let o = normgraph(
        dir.path(),
        &["--format", "json", "census", "--p", "7", "--t", "4", "--k", "4", "--sample", "--trials", "100000"],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["max"], 6);
    assert_eq!(v["modulus"], serde_json::json!([5, 0, 0, 1]));
    let o = normgraph(dir.path(), &["census", "--p", "7", "--t", "4", "--k", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--sample"));
}

#[test]
fn export_to_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("edges.txt");
    let o = normgraph(dir.path(), &["export", "--p", "3", "--t", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let summary = stdout(&o);
    assert!(summary.starts_with("P(3,4): 54 vertices, "));
    let lines = fs::read_to_string(&path).unwrap();
    let edges: Vec<(u64, u64)> = lines
        .lines()
        .map(|l| {
            let mut it = l.split(' ').map(|x| x.parse().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert!(edges.iter().all(|(u, v)| u < v));
    assert!(edges.windows(2).all(|w| w[0] < w[1]));
    assert!(summary.contains(&format!("{} edges", edges.len())));
    assert_eq!(normgraph(dir.path(), &["export", "--p", "101", "--t", "4"]).status.code(), Some(2));
}

#[test]
fn exit_codes_are_not_conflated() {
    let dir = TempDir::new().unwrap();
    assert_eq!(normgraph(dir.path(), &["witness46", "--p", "13"]).status.code(), Some(1));
    assert_eq!(normgraph(dir.path(), &["witness46", "--p", "12"]).status.code(), Some(1));
    assert_eq!(normgraph(dir.path(), &["sieve"]).status.code(), Some(2));
    assert_eq!(normgraph(dir.path(), &["sieve", "--limit", "x"]).status.code(), Some(2));
    assert_eq!(normgraph(dir.path(), &["census", "--p", "4", "--t", "3"]).status.code(), Some(2));
    assert_eq!(
        normgraph(dir.path(), &["witness-general", "--t", "3", "--m", "1", "--limit", "10"]).status.code(),
        Some(2)
    );
    let o = normgraph(dir.path(), &["witness46"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"p\":7"));
}

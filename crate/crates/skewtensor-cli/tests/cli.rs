use std::path::Path;
use std::process::{Command, Output};

fn skewtensor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewtensor")).args(args).output().expect("binary runs")
}

fn report(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn ids(v: &serde_json::Value) -> Vec<String> {
    v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap().to_string()).collect()
}

#[test]
fn bad_prime_is_a_configuration_error() {
    for p in ["5", "9", "7,15"] {
        let out = skewtensor(&["all", "--primes", p]);
        assert_eq!(out.status.code(), Some(2), "primes {p}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("configuration error"));
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn missing_theta_file() {
    let out = skewtensor(&["config", "--theta", "file:/nonexistent/theta.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_subcommand_selects_config_checks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = skewtensor(&["config", "--report", path.to_str().unwrap(), "--quiet"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = report(&path);
    let ids = ids(&v);
    assert!(ids.len() >= 10);
    assert!(ids.iter().all(|i| i.starts_with("config.")), "{ids:?}");
    assert_eq!(v["version"], "1");
    for c in v["checks"].as_array().unwrap() {
        assert!(c["expected"]["provenance"].is_string());
    }
}

#[test]
fn only_outside_subcommand_rejected() {
    let out = skewtensor(&["config", "--only", "chow.*"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn toml_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let rep = dir.path().join("r.json");
    std::fs::write(&cfg, format!("theta = \"ozeki\"\nprimes = [13]\nonly = [\"models.theta.*\"]\nreport = {:?}\n", rep.to_str().unwrap())).unwrap();
    let out = skewtensor(&["all", "--config", cfg.to_str().unwrap(), "-q"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = report(&rep);
    assert_eq!(v["theta"], "ozeki");
    assert!(ids(&v).contains(&"models.theta.rank2_locus".to_string()));

    std::fs::write(&cfg, "primez = [13]\n").unwrap();
    assert_eq!(skewtensor(&["all", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn report_identical_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut docs = Vec::new();
    for t in ["1", "8"] {
        let path = dir.path().join(format!("r{t}.json"));
        let out = skewtensor(&["all", "--primes", "7", "--only", "count.p7.*", "--only", "config.*", "--only", "rep.*", "--threads", t, "--report", path.to_str().unwrap(), "-q"]);
        assert_eq!(out.status.code(), Some(0));
        docs.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(docs[0], docs[1]);
}

#[test]
fn rank_degenerate_theta_fails() {
    // every component is the same rank-two form e1 ^ e2
    let row = |i: usize| -> Vec<&str> {
        match i {
            0 => vec!["0", "1", "0", "0", "0"],
            1 => vec!["-1", "0", "0", "0", "0"],
            _ => vec!["0"; 5],
        }
    };
    let comp: Vec<Vec<&str>> = (0..5).map(row).collect();
    let doc = serde_json::json!({ "field": "Q", "components": [comp, comp, comp, comp] });
    let dir = tempfile::tempdir().unwrap();
    let theta = dir.path().join("theta.json");
    let rep = dir.path().join("r.json");
    std::fs::write(&theta, doc.to_string()).unwrap();
    let out = skewtensor(&["models", "--only", "models.theta.*", "--theta", &format!("file:{}", theta.display()), "--report", rep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
    let v = report(&rep);
    let rec = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "models.theta.rank2_locus").expect("record");
    assert_eq!(rec["status"], "fail");
}

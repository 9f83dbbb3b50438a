use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minimal2"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn minimal2")
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn write_group(dir: &Path, name: &str, modulus: u32, gens: &[[u32; 4]]) -> String {
    let path = dir.join(name);
    let spec = serde_json::json!({ "prime": 2, "modulus": modulus, "generators": gens });
    std::fs::write(&path, spec.to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn census_level_8_genus_0() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let csv = dir.path().join("c.csv");
    let o = run(&[
        "--out",
        out.to_str().unwrap(),
        "census",
        "--level-bound",
        "8",
        "--genus",
        "0",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["command"], "census");
    assert_eq!(r["results"]["entries"].as_array().unwrap().len(), 4);
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 5);
    assert!(rows.starts_with("label,level,index,genus"));
    assert!(rows.lines().skip(1).all(|l| l.starts_with("8.24.0,8,24,0,false")));
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["--seed", "7", "census", "--level-bound", "16", "--genus", "0"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_config_key_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "command = \"quadfamily\"\nbogus = 1\n").unwrap();
    let o = run(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let cfg2 = dir.path().join("nested.toml");
    std::fs::write(&cfg2, "[census]\nlevel_bound = 8\nwhatever = true\n").unwrap();
    assert_eq!(run(&["--config", cfg2.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn invalid_bounds_are_rejected() {
    assert_eq!(run(&["census", "--level-bound", "0"]).status.code(), Some(2));
    assert_eq!(run(&["falsify", "--prime", "4"]).status.code(), Some(2));
    assert_eq!(run(&["falsify", "--prime", "17"]).status.code(), Some(2));
    assert_eq!(run(&["quadfamily", "--n-max", "61"]).status.code(), Some(2));
}

#[test]
fn config_file_drives_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.json");
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        format!("command = \"quadfamily\"\nout = {:?}\n[quadfamily]\nn_max = 5\n", out.to_str().unwrap()),
    )
    .unwrap();
    let o = run(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r["command"], "quadfamily");
    assert_eq!(r["config"]["quadfamily"]["n_max"], 5);
    assert_eq!(r["results"].as_array().unwrap().len(), 5);
    assert!(r.get("elapsed_ms").is_none());
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.json");
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "command = \"quadfamily\"\n[quadfamily]\nn_max = 5\n").unwrap();
    let o = run(&["--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "quadfamily", "--n-max", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(report(&out)["config"]["quadfamily"]["n_max"], 3);
}

#[test]
fn full_group_is_not_minimal() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_group(dir.path(), "gl2.json", 2, &[[1, 1, 0, 1], [0, 1, 1, 0]]);
    let out = dir.path().join("r.json");
    let o = run(&["--out", out.to_str().unwrap(), "check", "--group", &g]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r["results"]["minimality"]["verdict"], false);
    assert_eq!(r["checks"][0]["name"], "witness");
    assert_eq!(r["checks"][0]["passed"], true);
}

#[test]
fn genus_of_gamma0_2() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_group(dir.path(), "b.json", 2, &[[1, 1, 0, 1]]);
    let out = dir.path().join("r.json");
    let o = run(&["--out", out.to_str().unwrap(), "genus", "--group", &g]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r["results"]["index"], 3);
    assert_eq!(r["results"]["genus"]["genus"], 0);
    assert_eq!(r["results"]["genus"]["cusps"], 2);
}

#[test]
fn missing_group_file_is_an_error() {
    assert_eq!(run(&["check"]).status.code(), Some(2));
    assert_eq!(run(&["genus", "--group", "/nonexistent/g.json"]).status.code(), Some(2));
}

#[test]
fn falsify_mod_3_finds_nothing_minimal() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["--out", out.to_str().unwrap(), "falsify", "--prime", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["results"][0]["prime"], 3);
    assert_eq!(r["results"][0]["minimal_count"], 0);
}

#[test]
fn family_check_one_label() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&[
        "--out",
        out.to_str().unwrap(),
        "family-check",
        "--label",
        "16.48.0.25",
        "--primes",
        "3",
        "--points",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["results"].as_array().unwrap().len(), 1);
    assert_eq!(r["results"][0]["label"], "16.48.0.25");
}

#[test]
fn timing_flag_adds_elapsed() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["--timing", "--out", out.to_str().unwrap(), "quadfamily", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(report(&out)["elapsed_ms"].is_u64());
}

#[test]
fn stdout_report_and_stderr_verdicts() {
    let o = run(&["quadfamily", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["passed"], true);
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));
}

//! End-to-end tests of the `bdncg` binary: exit-code mapping over a golden
//! instance suite, canonical round-trips, JSON output shape, and
//! deterministic parallel checking.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bdncg"))
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("binary runs")
}

fn path_str(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

/// Generates the golden suite; returns (file, expected `check` exit code).
fn golden_suite(dir: &Path) -> Vec<(PathBuf, i32)> {
    let gen = |args: &[&str]| {
        let out = run(args, dir);
        assert!(out.status.success(), "gen failed: {:?}\n{}", args, String::from_utf8_lossy(&out.stderr));
    };
    let mut suite = Vec::new();
    let mut add = |name: &str, code: i32| suite.push((dir.join(name), code));

    gen(&["gen", "star", "--n", "6", "--owner", "leaves", "--variant", "max", "--R", "2", "-o", "star-max.json"]);
    add("star-max.json", 0);
    gen(&["gen", "star", "--n", "6", "--owner", "leaves", "--variant", "sum", "--B", "9", "-o", "star-sum.json"]);
    add("star-sum.json", 0);
    // leaves out of bound once B < 2n - 3
    gen(&["gen", "star", "--n", "6", "--owner", "leaves", "--variant", "sum", "--B", "8", "-o", "star-tight.json"]);
    add("star-tight.json", 1);
    gen(&["gen", "complete", "--n", "4", "--variant", "max", "--R", "1", "-o", "k4.json"]);
    add("k4.json", 0);
    gen(&["gen", "complete", "--n", "4", "--variant", "max", "--R", "2", "-o", "k4-loose.json"]);
    add("k4-loose.json", 1);
    gen(&["gen", "clique-pendant", "--k", "3", "--variant", "max", "-o", "cp.json"]);
    add("cp.json", 0);
    gen(&["gen", "path-hub", "--R", "2", "--h", "1", "-o", "ph.json"]);
    add("ph.json", 0);
    gen(&["gen", "prime-tree", "--p", "3", "-o", "pt.json"]);
    add("pt.json", 0);
    gen(&["gen", "multipartite", "--n", "8", "--k", "3", "-o", "mp.json"]);
    add("mp.json", 0);
    gen(&["gen", "ring", "--k", "2", "--h", "1", "--B", "4", "-o", "ring.json"]);
    add("ring.json", 0);
    gen(&["gen", "ring", "--k", "2", "--h", "1", "--B", "5", "-o", "ring-high.json"]);
    add("ring-high.json", 1);
    // center-owned star at the spanning minimum: leaves sit out of bound
    gen(&["gen", "star", "--n", "5", "--owner", "center", "--variant", "sum", "--B", "4", "-o", "star-center.json"]);
    add("star-center.json", 1);
    std::fs::write(dir.join("edgeless.json"), r#"{"variant":"max","n":3,"bounds":2,"buys":[[],[],[]]}"#)
        .unwrap();
    add("edgeless.json", 1);
    suite
}

#[test]
fn exit_codes_over_golden_suite() {
    let tmp = TempDir::new().unwrap();
    for (file, expected) in golden_suite(tmp.path()) {
        let out = run(&["check", file.to_str().unwrap()], tmp.path());
        assert_eq!(
            out.status.code(),
            Some(expected),
            "{}: {}",
            file.display(),
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn save_load_save_is_byte_identical() {
    let tmp = TempDir::new().unwrap();
    for (file, _) in golden_suite(tmp.path()) {
        // first save canonicalizes; loading and saving again must not move a byte
        let saved = tmp.path().join("canonical.json");
        let out = run(
            &["export", file.to_str().unwrap(), "--format", "json", "-o", saved.to_str().unwrap()],
            tmp.path(),
        );
        assert!(out.status.success());
        let first = std::fs::read(&saved).unwrap();
        let again = run(&["export", saved.to_str().unwrap(), "--format", "json"], tmp.path());
        assert!(again.status.success());
        assert_eq!(again.stdout, first, "round trip differs for {}", file.display());
        // generated files are already canonical
        if file.file_name().unwrap() != "edgeless.json" {
            assert_eq!(first, std::fs::read(&file).unwrap());
        }
    }
}

#[test]
fn check_json_has_expected_shape() {
    let tmp = TempDir::new().unwrap();
    let star = path_str(tmp.path(), "s.json");
    run(&["gen", "star", "--n", "5", "--owner", "leaves", "--variant", "max", "--R", "2", "-o", &star], tmp.path());
    let out = run(&["check", &star, "--json"], tmp.path());
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "STABLE");
    assert_eq!(v["social_cost"], 4);
    let players = v["players"].as_array().unwrap();
    assert_eq!(players.len(), 5);
    for p in players {
        assert!(p["player"].is_u64());
        assert!(p["current_cost"].is_u64());
        assert!(p["best_cost"].is_u64());
        assert_eq!(p["status"], "exact");
        assert!(p["improving_deviation"].is_null());
    }
}

#[test]
fn parallel_check_matches_serial() {
    let tmp = TempDir::new().unwrap();
    let pt = path_str(tmp.path(), "pt.json");
    run(&["gen", "prime-tree", "--p", "3", "-o", &pt], tmp.path());
    let serial = run(&["check", &pt, "--json"], tmp.path());
    let parallel = run(&["check", &pt, "--json", "--jobs", "4"], tmp.path());
    assert_eq!(serial.status.code(), parallel.status.code());
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn tiny_budget_yields_unknown_exit() {
    let tmp = TempDir::new().unwrap();
    let pt = path_str(tmp.path(), "pt.json");
    run(&["gen", "prime-tree", "--p", "3", "-o", &pt], tmp.path());
    let out = run(&["check", &pt, "--budget", "0"], tmp.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("UNKNOWN"));
    // analyze downgrades to skipped checks and the resource exit code too
    let out = run(&["analyze", &pt, "--budget", "0", "--json"], tmp.path());
    assert_eq!(out.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "UNKNOWN");
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["status"], "SKIPPED");
    }
}

#[test]
fn budget_env_var_is_honored() {
    let tmp = TempDir::new().unwrap();
    let pt = path_str(tmp.path(), "pt.json");
    run(&["gen", "prime-tree", "--p", "3", "-o", &pt], tmp.path());
    let out = bin()
        .args(["check", &pt])
        .env("BDNCG_BUDGET", "0")
        .current_dir(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    let tmp = TempDir::new().unwrap();
    let out = run(&["gen", "prime-tree", "--p", "9", "-o", "x.json"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("prime"));

    let star = path_str(tmp.path(), "s.json");
    run(&["gen", "star", "--n", "5", "--owner", "leaves", "--variant", "max", "--R", "2", "-o", &star], tmp.path());
    let out = run(&["best-response", &star, "--player", "99"], tmp.path());
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(tmp.path().join("broken.json"), "{not json").unwrap();
    let out = run(&["check", "broken.json"], tmp.path());
    assert_eq!(out.status.code(), Some(2));

    // missing subcommand arguments are clap usage errors
    let out = run(&["gen", "star", "-o", "y.json"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn best_response_on_reduction() {
    let tmp = TempDir::new().unwrap();
    std::fs::write(tmp.path().join("c4.txt"), "n 4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let rd = path_str(tmp.path(), "rd.json");
    run(&["gen", "reduce-domset", "--graph", "c4.txt", "--R", "2", "-o", &rd], tmp.path());
    let out = run(&["best-response", &rd, "--player", "4", "--json"], tmp.path());
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cost"], 2); // gamma(C_4)

    let km = path_str(tmp.path(), "km.json");
    std::fs::write(tmp.path().join("p4.txt"), "n 4\n0 1\n1 2\n2 3\n").unwrap();
    run(&["gen", "reduce-kmedian", "--graph", "p4.txt", "--beta", "4", "-o", &km], tmp.path());
    let out = run(&["best-response", &km, "--player", "4", "--json"], tmp.path());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cost"], 1); // 1-median of P_4 costs 4
}

#[test]
fn dynamics_trace_and_determinism() {
    let tmp = TempDir::new().unwrap();
    // empty profile, max R = 1, n = 4: converges to the complete graph
    std::fs::write(
        tmp.path().join("empty.json"),
        r#"{"variant":"max","n":4,"bounds":1,"buys":[[],[],[],[]]}"#,
    )
    .unwrap();
    let trace = path_str(tmp.path(), "trace.jsonl");
    let out = run(
        &["dynamics", "empty.json", "--trace", &trace, "--json"],
        tmp.path(),
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["outcome"], "equilibrium");
    let total: usize = v["buys"].as_array().unwrap().iter().map(|b| b.as_array().unwrap().len()).sum();
    assert_eq!(total, 6); // K_4
    let trace_text = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(trace_text.lines().count(), 3); // players 0..2 deviate, 3 is covered
    for line in trace_text.lines() {
        let e: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(e["round"].is_u64() && e["player"].is_u64());
    }

    // a seeded random schedule is reproducible
    std::fs::write(
        tmp.path().join("empty6.json"),
        r#"{"variant":"sum","n":6,"bounds":9,"buys":[[],[],[],[],[],[]]}"#,
    )
    .unwrap();
    let a = run(&["dynamics", "empty6.json", "--schedule", "random", "--seed", "7", "--json"], tmp.path());
    let b = run(&["dynamics", "empty6.json", "--schedule", "random", "--seed", "7", "--json"], tmp.path());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_writes_csv_rows() {
    let tmp = TempDir::new().unwrap();
    let pt = path_str(tmp.path(), "pt5.json");
    run(&["gen", "prime-tree", "--p", "5", "-o", &pt], tmp.path());
    let csv = path_str(tmp.path(), "report.csv");
    let out = run(&["analyze", &pt, "--csv", &csv, "--json"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "STABLE");
    assert_eq!(v["social_cost"], 241);
    assert_eq!(v["optimum"], 56);
    let ratio = v["ratio"].as_f64().unwrap();
    assert!((ratio - 241.0 / 56.0).abs() < 1e-9);

    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("instance,check,measured,bound,verdict"));
    let ratio_row = lines.next().unwrap();
    assert!(ratio_row.contains(",ratio,241,56,4.3036"), "{ratio_row}");
    assert!(text.lines().any(|l| l.contains(",gamma_bound,") && l.ends_with("PASS")));
    assert!(text.lines().any(|l| l.contains(",self_centered_rule,") && l.ends_with("PASS")));
}

#[test]
fn analyze_nonuniform_uses_supplied_optimum() {
    let tmp = TempDir::new().unwrap();
    let cp = path_str(tmp.path(), "cp4.json");
    run(&["gen", "clique-pendant", "--k", "4", "--variant", "max", "-o", &cp], tmp.path());
    let out = run(&["analyze", &cp, "--json"], tmp.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["social_cost"], 22);
    assert_eq!(v["optimum"], 19);

    // without a supplied optimum, non-uniform bounds are a usage error
    std::fs::write(
        tmp.path().join("nu.json"),
        r#"{"variant":"max","n":3,"bounds":[2,2,3],"buys":[[1],[2],[]]}"#,
    )
    .unwrap();
    let out = run(&["analyze", "nu.json"], tmp.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn export_formats() {
    let tmp = TempDir::new().unwrap();
    let s = path_str(tmp.path(), "s.json");
    run(&["gen", "star", "--n", "4", "--owner", "leaves", "--variant", "max", "--R", "2", "-o", &s], tmp.path());
    let dot = run(&["export", &s, "--format", "dot"], tmp.path());
    let dot_text = String::from_utf8(dot.stdout).unwrap();
    assert!(dot_text.starts_with("graph bdncg {"));
    assert!(dot_text.contains("1 -- 0 [dir=forward];"));

    let el = run(&["export", &s, "--format", "edgelist"], tmp.path());
    let el_text = String::from_utf8(el.stdout).unwrap();
    assert_eq!(el_text.lines().next(), Some("n 4"));
    assert_eq!(el_text.lines().count(), 4);
}

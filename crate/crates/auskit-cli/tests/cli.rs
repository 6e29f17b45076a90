use std::process::{Command, Output};

fn auskit(args: &[&str]) -> Output {
    auskit_env(args, None)
}

fn auskit_env(args: &[&str], caps: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_auskit"));
    cmd.args(args).env_remove("AUSKIT_CAPS");
    if let Some(c) = caps {
        cmd.env("AUSKIT_CAPS", c);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_kron2(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("kron2.alg");
    std::fs::write(&path, "field 2\nvertices a b\narrow alpha b a\narrow beta b a\n").unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn loop_example_runs_clean() {
    let o = auskit(&["examples", "run", "loop-b"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("sources 0 = P(b)"));
    assert!(out.contains("sources 1 = T"));
    assert!(out.contains("sources 2 = Y"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn unknown_vertex_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_kron2(&dir);
    let o = auskit(&["lattice", "--algebra", &alg, "--C", "P(z)", "--Y", "kQ(0)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown identifier `z`"));
}

#[test]
fn syntax_error_is_a_parse_error() {
    let o = auskit(&["lattice", "--example", "kron2", "--C", "kP(2", "--Y", "kQ(0)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("parse error"));
}

#[test]
fn lowered_ext_cap_reports_missing_submodule() {
    let o = auskit(&["verify", "--example", "subspace3/hammock", "--max-ext-mult", "1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("misses submodules: node"));
}

#[test]
fn dimension_cap_exits_three() {
    let o = auskit(&["verify", "--example", "subspace3/hammock", "--max-dim", "5"]);
    assert_eq!(o.status.code(), Some(3));
    let o = auskit_env(&["verify", "--example", "subspace3/hammock"], Some("max_dim=5"));
    assert_eq!(o.status.code(), Some(3));
    let o = auskit_env(&["verify", "--example", "a2/simple-top"], Some("max_dim"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lattice_writes_dot_and_json_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let alg = write_kron2(&dir);
    let dot = dir.path().join("out.dot");
    let json = dir.path().join("out.json");
    let args = ["lattice", "--algebra", &alg, "--C", "kP(2)", "--Y", "kQ(0)"];
    let mut with_files = args.to_vec();
    with_files.extend(["--dot", dot.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    let o = auskit(&with_files);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("nodes 5, height 2, shape G(2)"));
    let d = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(d.matches("[label=").count(), 5);
    assert_eq!(d.matches(" -> ").count(), 6);
    let j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(j["nodes"].as_array().unwrap().len(), 5);
    assert_eq!(j["field"], 2);
    let mut json_args = vec!["--format", "json", "--seed", "7"];
    json_args.extend(args);
    assert_eq!(auskit(&json_args).stdout, auskit(&json_args).stdout);
}

#[test]
fn regular_module_gives_all_submodules() {
    let o = auskit(&["lattice", "--example", "subspace3", "--C", "P(a) ++ P(b1) ++ P(b2) ++ P(b3)", "--Y", "Q(a)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("nodes 9, height 4"));
}

#[test]
fn determiner_of_tube_map_includes_projective() {
    let o = auskit(&["determiner", "--example", "onepoint-ext/tau-inverse-simple", "--f", "hom(R_inf, Y)[0]"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("C(f) =") && l.contains("P(c)")), "{out}");
}

#[test]
fn kronecker_table_verifies() {
    let o = auskit(&["kronecker", "table", "--max", "3", "--field", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(!out.contains("FAIL"));
    assert!(out.contains("0 wrong"));
}

#[test]
fn sigma_and_strongly_regular_lists_agree() {
    let o = auskit(&["kronecker", "sigma", "--i", "2", "--j", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    let line = |p: &str| out.lines().find_map(|l| l.strip_prefix(p)).unwrap().trim().to_string();
    assert_eq!(line("length-one sources:"), line("strongly regular:"));
    let s = stdout(&auskit(&["kronecker", "strongreg", "--len", "2", "--field", "3"]));
    assert!(s.starts_with("4 strongly regular modules of length 2 over F_3"));
}

#[test]
fn unknown_example_exits_two() {
    let o = auskit(&["examples", "run", "no-such-example"]);
    assert_eq!(o.status.code(), Some(2));
}

use std::io::Write;
use std::process::{Command, Output, Stdio};

use planar_turan::canon::canonical_form;
use planar_turan::graph6::decode_graph;
use planar_turan::Adjacency;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_planar-turan"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn assert_schema(kind: &str, doc: &Value) {
    let path = format!("{}/schemas/{kind}.schema.json", env!("CARGO_MANIFEST_DIR"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{kind}: {errors:?}");
}

const K4: &str = "C~";

#[test]
fn convert_round_trip() {
    let rot = run(&["convert", "--graph6", K4]);
    assert_eq!(rot.status.code(), Some(0));
    let back = run_stdin(&["convert", "--rotation", "-"], &stdout(&rot));
    assert_eq!(back.status.code(), Some(0));
    let g = decode_graph(stdout(&back).trim()).unwrap();
    assert_eq!(canonical_form(&g), canonical_form(&decode_graph(K4).unwrap()));

    let cube = "Gr`HOk";
    let rot = run(&["convert", "--graph6", cube]);
    let back = run_stdin(&["convert", "--rotation", "-"], &stdout(&rot));
    let again = run_stdin(&["convert", "--rotation", "-"], &stdout(&run(&["convert", "--graph6", stdout(&back).trim()])));
    assert_eq!(
        canonical_form(&decode_graph(stdout(&again).trim()).unwrap()),
        canonical_form(&decode_graph(cube).unwrap())
    );
}

#[test]
fn malformed_graph6_reports_position() {
    let o = run(&["convert", "--graph6", "C~~"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("position"), "{}", stderr(&o));
    let o = run(&["check", "--family", "theta4", "C\x7f"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("position 1"), "{}", stderr(&o));
}

#[test]
fn asymmetric_rotation_rejected() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "0: 1 2\n1: 0 2\n2: 0").unwrap();
    let o = run(&["convert", "--rotation", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1 lists 2"), "{}", stderr(&o));
}

#[test]
fn nonplanar_audit_names_kuratowski_subgraph() {
    let o = run(&["audit", "--graph6", "D~{"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("K5"), "{}", stderr(&o));
    // K3,3
    let o = run(&["audit", "--graph6", "EFz_"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("K3,3"), "{}", stderr(&o));
}

#[test]
fn check_exit_codes() {
    let o = run(&["check", "--family", "theta4", K4]);
    assert_eq!(o.status.code(), Some(1));
    let vs: Vec<usize> = stdout(&o)
        .split_whitespace()
        .skip(1)
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(vs.len(), 4);
    let o = run(&["check", "--family", "theta5", K4]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "free");
    let o = run(&["check", "--family", "theta7", K4]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["check", "--family", "petersen", K4]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_outputs_match_schemas() {
    let o = run(&["check", "--json", "--family", "theta4", K4]);
    assert_schema("check", &json(&o));
    let o = run(&["check", "--json", "--family", "c5", K4]);
    assert_schema("check", &json(&o));
    let o = run(&["search", "--n", "7", "--family", "theta6+k5m", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_schema("search", &json(&o));
    let o = run(&["table", "--json", "--family", "c5", "--from", "3", "--to", "7"]);
    assert_schema("table", &json(&o));
    let o = run(&["audit", "--random", "20", "--seed", "11", "--family", "theta5"]);
    assert_schema("audit", &json(&o));
    let rot = stdout(&run(&["construct", "--family", "theta4", "--k", "1", "--format", "rotation"]));
    let o = run_stdin(&["audit", "--rotation", "-", "--family", "theta4", "--certificate"], &rot);
    assert_eq!(o.status.code(), Some(0));
    assert_schema("audit", &json(&o));
}

#[test]
fn golden_tables() {
    for family in ["theta4", "theta5", "theta6", "c4", "c5", "c6"] {
        let path = format!("{}/tests/golden/table_{family}.txt", env!("CARGO_MANIFEST_DIR"));
        let expected = std::fs::read_to_string(path).unwrap();
        let o = run(&["table", "--family", family, "--from", "3", "--to", "8"]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), expected, "{family}");
    }
}

fn table_rows(family: &str, to: &str) -> Vec<Value> {
    let o = run(&["table", "--json", "--family", family, "--to", to]);
    json(&o)["result"].as_array().unwrap().clone()
}

#[test]
fn table_examples() {
    let rows = table_rows("theta4", "8");
    assert_eq!(rows.iter().map(|r| r["n"].as_u64().unwrap()).collect::<Vec<_>>(), [4, 5, 6, 7, 8]);
    assert_eq!(rows[0]["value"], 4);
    assert_eq!(rows[0]["bound"], "24/5");

    let rows = table_rows("theta5", "7");
    assert_eq!(rows[0]["n"], 5);
    assert_eq!(rows[0]["value"], 7);
    assert_eq!(rows[0]["bound"], "15/2");

    let c6 = table_rows("c6", "8");
    let theta6 = table_rows("theta6", "8");
    for (a, b) in c6.iter().zip(&theta6) {
        assert_eq!(a["n"], b["n"]);
        assert!(a["value"].as_u64() <= b["value"].as_u64());
    }
}

#[test]
fn audits_of_named_graphs() {
    let rot = stdout(&run(&["construct", "--named", "fig3", "--format", "rotation"]));
    let o = run_stdin(&["audit", "--rotation", "-"], &rot);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["identities"]["applicable"], true);

    let rot = stdout(&run(&["construct", "--family", "theta4", "--k", "1", "--format", "rotation"]));
    let o = run_stdin(&["audit", "--rotation", "-", "--family", "theta4"], &rot);
    let checks = json(&o)["result"]["inequalities"]["checks"].as_array().unwrap().clone();
    let first = checks.iter().find(|c| c["name"] == "2e >= 4f - f3").unwrap();
    assert_eq!(first["lhs"], first["rhs"]);
}

#[test]
fn construct_sizes() {
    let g6 = stdout(&run(&["construct", "--family", "theta4", "--k", "1"]));
    let g = decode_graph(g6.trim()).unwrap();
    assert_eq!((g.order(), g.size()), (32, 72));
    let g6 = stdout(&run(&["construct", "--named", "k5minus"]));
    assert_eq!(decode_graph(g6.trim()).unwrap().size(), 9);
}

#[test]
fn search_guard_and_budget() {
    let o = run(&["search", "--n", "12", "--family", "theta6"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["search", "--n", "9", "--family", "theta6", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["result"]["exhaustive"], false);
}

#[test]
fn enumerate_and_seeded_audit() {
    let o = run(&["enumerate", "--n", "4", "--family", "theta4", "--count"]);
    assert_eq!(stdout(&o).trim(), "9");
    let o = run(&["enumerate", "--n", "3", "--family", "none"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    let a = run(&["audit", "--random", "15", "--seed", "5"]);
    let b = run(&["audit", "--random", "15", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

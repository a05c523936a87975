use std::io::Write;
use std::process::{Command, Output, Stdio};

use factorcrit::graph::{encode_graph6, parse_graph6, VertexSet};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_factorcrit"))
        .args(args)
        .env_remove("FACTORCRIT_JOBS")
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_factorcrit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("one JSON object")
}

// C6 is EhEG, C5 is Dhc.

#[test]
fn single_edge_has_a_perfect_matching() {
    let o = run(&["pm", "A_"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("perfect matching: yes"));
}

#[test]
fn empty_pair_reports_tutte_certificate() {
    let o = run(&["--json", "pm", "A?"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["perfect"], false);
    assert_eq!(v["tutte_certificate"]["deficit"], 2);
}

#[test]
fn six_cycle_is_not_2_critical() {
    for method in ["definitional", "tutte"] {
        let o = run(&["kfc", "--k", "2", "--method", method, "EhEG"]);
        assert_eq!(o.status.code(), Some(1), "{method}");
        assert!(stdout(&o).contains("failing set: {0,2}"), "{method}");
    }
    let v = json(&run(&["--json", "kfc", "--k", "2", "EhEG"]));
    assert_eq!(v["verdict"], false);
    assert_eq!(v["failing_set"], serde_json::json!([0, 2]));
}

#[test]
fn five_cycle_is_minimally_1_critical() {
    let o = run(&["minimal", "--k", "1", "Dhc"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("edge 0-1: witness {2}"));

    let o = run(&["witness", "--k", "1", "--edge", "0,1", "--all", "Dhc"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "witness: {2}\nwitness: {4}\n");
}

#[test]
fn complete_graph_is_not_minimal() {
    // K5 is 1-critical but any edge can go
    let o = run(&["minimal", "--k", "1", "D~{"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("can be removed"));
}

#[test]
fn survey_of_order_6_at_k_4_finds_only_k6() {
    let o = run(&["--json", "survey", "--gen", "6", "--k", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["counts"]["total"], 156);
    assert_eq!(v["counts"]["minimal"], 1);
    assert_eq!(v["min_degree_distribution"]["5"], 1);
}

#[test]
fn survey_lines_are_one_record_per_graph() {
    let dir = std::env::temp_dir().join(format!("factorcrit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lines.jsonl");
    let o = run(&["survey", "--gen", "5", "--k", "1", "--lines", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let records: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 34);
    // the five-cycle and the bowtie
    assert_eq!(records.iter().filter(|r| r["minimal"] == true).count(), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn invalid_k_is_a_usage_error() {
    assert_eq!(run(&["kfc", "--k", "3", "A_"]).status.code(), Some(2));
    assert_eq!(run(&["kfc", "--k", "1", "EhEG"]).status.code(), Some(2));
    assert_eq!(run(&["survey", "--gen", "6", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn malformed_input_is_a_usage_error() {
    assert_eq!(run(&["pm", "~~"]).status.code(), Some(2));
    assert_eq!(run(&["pm", "--k"]).status.code(), Some(2));
    assert_eq!(run_stdin(&["pm"], "A_\nbad\n").status.code(), Some(2));
}

#[test]
fn lenient_stdin_skips_bad_lines_and_takes_worst_exit() {
    let o = run_stdin(&["pm", "--lenient"], "A_\nbad\nA?\n");
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("A_: perfect matching: yes"));
    assert!(out.contains("A?: perfect matching: no"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped"));
}

#[test]
fn generated_catalog_round_trips() {
    let o = run(&["gen", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 34);
    let again = run_stdin(&["--json", "pm"], &text);
    let records: Vec<Value> = stdout(&again)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let echoed: Vec<&str> = records.iter().map(|r| r["graph6"].as_str().unwrap()).collect();
    assert_eq!(echoed, text.lines().collect::<Vec<_>>());
}

#[test]
fn verify_passes_on_five_cycle() {
    let o = run(&["--json", "verify", "--k", "1", "Dhc"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let verdicts = v["verdicts"].as_array().unwrap();
    assert!(verdicts.iter().any(|r| r["theorem"] == "C1.2" && r["pass"] == true));
    assert!(verdicts.iter().all(|r| r["graph6"] == "Dhc"));
}

#[test]
fn hunt_is_clean_and_inverted_hunt_plants_counterexamples() {
    let o = run(&["hunt", "--from", "4", "--to", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 counterexamples"));

    let o = run(&["--json", "hunt", "--from", "6", "--to", "6", "--k", "2", "--invert"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!json(&o)["counterexamples"].as_array().unwrap().is_empty());
}

#[test]
fn classify_labels_a_residual() {
    // GHUKn? is minimally 2-critical; {3,4} witnesses its edge 1-2
    let g = parse_graph6(b"GHUKn?").unwrap();
    let d = g.delete_vertices(VertexSet::from_iter([3, 4])).unwrap();
    let (u, v) = (d.old_to_new[1].unwrap(), d.old_to_new[2].unwrap());
    let residual = d.graph.remove_edge(u, v).unwrap();
    let g6 = encode_graph6(&residual);
    let edge = format!("{u},{v}");

    let o = run(&["classify", "--family", "a", "--edge", &edge, &g6]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("configuration: A2\n"));

    let o = run(&["predicates", "--k", "2", "--edge", "1,2", "GHUKn?"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness {3,4}: A2"));

    // the designated pair must be a non-edge of the residual
    let o = run(&["classify", "--family", "a", "--edge", &edge, &encode_graph6(&d.graph)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn jobs_setting_does_not_change_output() {
    let one = run(&["--jobs", "1", "--json", "survey", "--gen", "6", "--k", "2"]);
    let two = run(&["--jobs", "2", "--json", "survey", "--gen", "6", "--k", "2"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
}

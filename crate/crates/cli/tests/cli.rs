use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.json"))
        .to_string_lossy()
        .into_owned()
}

fn nvcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nvcat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn validate_genus_two() {
    let o = nvcat(&["validate", &corpus("genus2")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("periods generator: 1, lambda: 1"));
}

#[test]
fn validate_reports_violated_triangle() {
    let dir = std::env::temp_dir().join(format!("nvcat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    let doc = r#"{"vertices": 3, "maximal_simplices": [[0, 1, 2]],
        "xi": [{"edge": [0, 1], "value": 1}, {"edge": [1, 2], "value": 0}, {"edge": [0, 2], "value": 0}]}"#;
    std::fs::write(&path, doc).unwrap();
    let o = nvcat(&["validate", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["cocycle_ok"], false);
    assert_eq!(v["violations"], serde_json::json!([[0, 1, 2]]));
}

#[test]
fn missing_file_exits_two() {
    let o = nvcat(&["validate", "/nonexistent/input.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cannot read"));
}

#[test]
fn supp_of_corpus_inputs() {
    let cases = [
        ("mapping_torus_deg2", vec!["1/2", "1"]),
        ("circle", vec!["1"]),
        ("torus", vec!["1"]),
    ];
    for (name, expected) in cases {
        let o = nvcat(&["supp", &corpus(name), "--json"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert_eq!(json(&o)["supp"], serde_json::json!(expected), "{name}");
    }
    let v = json(&nvcat(&["supp", &corpus("torus"), "--json"]));
    assert_eq!(v["degrees"][0]["invariant_factors"], serde_json::json!(["t-1"]));
    assert_eq!(v["degrees"][1]["invariant_factors"], serde_json::json!(["t-1"]));
}

#[test]
fn supp_of_exact_class_exits_two() {
    let o = nvcat(&["supp", &corpus("cone")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("untwisted"));
}

#[test]
fn bound_examples() {
    for (name, best) in [("genus2", 1), ("mapping_torus_deg2", 0), ("torus", 0)] {
        let o = nvcat(&["bound", &corpus(name), "--json"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        let v = json(&o);
        assert_eq!(v["best_bound"], best, "{name}");
        assert_eq!(v["schema"], 1);
    }
}

#[test]
fn exact_class_gives_classical_report() {
    let v = json(&nvcat(&["bound", &corpus("minimal_torus"), "--json"]));
    assert_eq!(v["best_bound"], 3);
    assert_eq!(v["bounds"][0]["theorem"], "classical");
    assert!(v["relations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r.as_str().unwrap().contains("cat(X,0) = cat(X)")));
}

#[test]
fn explicit_twists() {
    let v = json(&nvcat(&["bound", &corpus("genus2"), "--a", "3", "--json"]));
    assert_eq!(v["bounds"][0]["certificate"]["cup"]["a"], "3");
    assert_eq!(v["bounds"][0]["certificate"]["cup"]["b"], "1/3");
    // u ∪ v lands in H^2(X; 15^xi) = 0
    let v = json(&nvcat(&["bound", &corpus("genus2"), "--a", "3", "--b", "5", "--json"]));
    assert_eq!(v["best_sources"], serde_json::json!(["massey"]));
    let o = nvcat(&["bound", &corpus("mapping_torus_deg2"), "--a", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn small_field_exits_three() {
    let o = nvcat(&["bound", &corpus("mapping_torus_deg2"), "--field", "fp:3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn report_round_trip() {
    let dir = std::env::temp_dir().join(format!("nvcat-replay-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = nvcat(&["bound", &corpus("genus2"), "--json"]);
    std::fs::write(&path, &o.stdout).unwrap();
    let o = nvcat(&["replay", &corpus("genus2"), path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("best bound 1"));
    let o = nvcat(&["replay", &corpus("torus"), path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cohom_agrees_with_cover_ranks() {
    let v = json(&nvcat(&["cohom", &corpus("genus2"), "--json"]));
    let ranks = v["cover_free_ranks"].clone();
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 5);
    assert!(values.iter().all(|d| d["dims"] == ranks));
}

#[test]
fn full_report_and_text_mode() {
    let o = nvcat(&["report", &corpus("mapping_torus_deg2")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("supp: {1/2, 1}"));
    assert!(text.contains("best bound: 0"));
    let v = json(&nvcat(&["report", &corpus("circle"), "--json", "--field", "fp:5"]));
    assert_eq!(v["bound"]["field"], "fp:5");
}

#[test]
fn bad_thread_count_exits_two() {
    let o = Command::new(env!("CARGO_BIN_EXE_nvcat"))
        .args(["validate", &corpus("circle")])
        .env("NVCAT_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

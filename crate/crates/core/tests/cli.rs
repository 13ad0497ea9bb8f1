use std::process::{Command, Output};

use hodge_ci::engine::Engine;
use hodge_ci::io::emit_custom_ambient;
use hodge_ci::CiSpec;

fn hodge_ci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hodge-ci")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn quintic_pretty() {
    let o = hodge_ci(&["diamond", "--ambient", "P4", "--degrees", "5", "--format", "pretty"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["1", "101", "101", "1"]), "{text}");
}

#[test]
fn quintic_json() {
    let o = hodge_ci(&["diamond", "--degrees", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 3);
    let cells = v["cohomology"].as_array().unwrap();
    assert!(cells.iter().any(|c| c == &serde_json::json!([3, 2, 1, 101])));
}

#[test]
fn quintic_csv() {
    let o = hodge_ci(&["diamond", "--degrees", "5", "--format", "csv"]);
    assert!(stdout(&o).contains("\n3,1,2,101\n"));
}

#[test]
fn linear_hyperplane_is_p3() {
    let o = hodge_ci(&["diamond", "--ambient", "P4", "--degrees", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 3);
    assert_eq!(v["cohomology"].as_array().unwrap().len(), 4);
}

#[test]
fn split_breakdown() {
    for cmd in ["mhs", "trace"] {
        let o = hodge_ci(&[cmd, "--degrees", "5", "--split", "3,2", "--format", "json"]);
        assert!(o.status.success(), "{cmd}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let row = v["breakdown"]["rows"]
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["p"] == 2)
            .unwrap()
            .clone();
        let mut terms: Vec<u64> = row["terms"].as_array().unwrap().iter().map(|t| t.as_u64().unwrap()).collect();
        terms.sort_unstable();
        assert_eq!(terms, [0, 1, 5, 19, 76], "{cmd}");
    }
}

#[test]
fn mhs_weights() {
    let o = hodge_ci(&["mhs", "--degrees", "5", "--split", "3,2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let pieces: Vec<(i64, u64)> = v["pieces"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            let total = p["dims"].as_array().unwrap().iter().map(|d| d[2].as_u64().unwrap()).sum();
            (p["weight"].as_i64().unwrap(), total)
        })
        .collect();
    assert_eq!(pieces, [(2, 21), (3, 162), (4, 21)]);
    let text = stdout(&hodge_ci(&["mhs", "--degrees", "5", "--split", "3,2"]));
    assert!(text.contains("Gr_F^2=101"), "{text}");
}

#[test]
fn custom_quadric_matches_projective() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quadric3.json");
    let tower = Engine::new().tower_of("quadric3", &CiSpec::in_projective(4, &[2]).unwrap()).unwrap();
    std::fs::write(&path, emit_custom_ambient(&tower)).unwrap();
    let custom = hodge_ci(&["diamond", "--ambient-file", path.to_str().unwrap(), "--degrees", "3", "--format", "json"]);
    let direct = hodge_ci(&["diamond", "--ambient", "P4", "--degrees", "2,3", "--format", "json"]);
    assert!(custom.status.success(), "{}", String::from_utf8_lossy(&custom.stderr));
    assert_eq!(stdout(&custom), stdout(&direct));
}

#[test]
fn verify_exit_codes() {
    let ok = hodge_ci(&["verify", "--max-degree", "4", "--max-ambient-dim", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).lines().all(|l| l.starts_with("PASS")));

    let bad = hodge_ci(&["verify", "--max-degree", "4", "--max-ambient-dim", "3", "--inject-fault", "full-h0"]);
    assert_eq!(bad.status.code(), Some(1));
    let text = stdout(&bad);
    assert!(text.contains("FAIL plane-curve-genus"), "{text}");
    assert!(text.contains("g(d) = g(d1) + g(d2) + d1*d2 - 1"), "{text}");
}

#[test]
fn schema_and_usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"kind":"custom","dim":1}"#).unwrap();
    let o = hodge_ci(&["diamond", "--ambient-file", path.to_str().unwrap(), "--degrees", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schema error"));
    assert!(o.stdout.is_empty());

    assert_eq!(hodge_ci(&["diamond", "--degrees", "5", "--split", "2,2"]).status.code(), Some(2));
    assert_eq!(hodge_ci(&["diamond", "--ambient", "Q4", "--degrees", "2"]).status.code(), Some(2));
    assert_eq!(hodge_ci(&["diamond", "--degrees", "2,2,2,2,2"]).status.code(), Some(2));
    assert_eq!(hodge_ci(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn trace_of_quartic_surface() {
    let o = hodge_ci(&["trace", "--ambient", "P3", "--degrees", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["depth"].as_u64().unwrap() <= 4);
    assert!(v["nodes"].as_array().unwrap().len() <= 20);
    assert_eq!(v["root"], "P3[4]");
}

#[test]
fn table_of_surfaces() {
    let o = hodge_ci(&["table", "--ambient", "P3", "--max-degree", "4", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().last().unwrap(), "4,1,20,1");
}

use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn brauer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brauer")).args(args).output().expect("binary runs")
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = brauer(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn write(dir: &TempDir, name: &str, v: &Value) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

fn klein(dir: &TempDir) -> String {
    write(dir, "klein.json", &json!({"kind": "permutations", "generators": [[1, 0, 3, 2], [2, 3, 0, 1]], "u": "g0"}))
}

#[test]
fn h2_of_klein_four() {
    let dir = TempDir::new().unwrap();
    let g = klein(&dir);
    let (code, v) = json_of(&["h2", "--group", &g]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["result"]["invariants"], json!([2]));
    assert_eq!(v["group"]["order"], 4);
    let (_, v) = json_of(&["h2", "--group", &g, "--coeff", "2"]);
    assert_eq!(v["result"]["invariants"], json!([2, 2, 2]));
}

#[test]
fn emitted_group_reloads_with_the_same_indexing() {
    let dir = TempDir::new().unwrap();
    let g = klein(&dir);
    let table = dir.path().join("table.json");
    let (_, first) = json_of(&["h2sharp", "--group", &g, "--emit-group", table.to_str().unwrap()]);
    let emitted: Value = serde_json::from_str(&std::fs::read_to_string(&table).unwrap()).unwrap();
    assert_eq!(emitted["kind"], "table");
    let (_, second) = json_of(&["h2sharp", "--group", table.to_str().unwrap()]);
    assert_eq!(first["group"]["u"], second["group"]["u"]);
    assert_eq!(first["group"]["elements"], second["group"]["elements"]);
    assert_eq!(first["result"], second["result"]);
}

#[test]
fn cocycle_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = klein(&dir);
    let (_, v) = json_of(&["h2", "--group", &g]);
    let rep = &v["result"]["representatives"][0];
    let file = write(&dir, "sigma.json", rep);
    let (code, v) = json_of(&["h2", "--group", &g, "--cocycle", &file]);
    assert_eq!(code, 0);
    assert!(!v["result"]["class"].is_null());
    assert_ne!(v["result"]["class"], json!([0]));
    // a cochain which is not a cocycle
    let bad = write(&dir, "bad.json", &json!({"modulus": 2, "order": 4, "values": {"2,2": 1}}));
    assert_eq!(brauer(&["h2", "--group", &g, "--coeff", "2", "--cocycle", &bad]).status.code(), Some(2));
}

#[test]
fn json_output_is_deterministic() {
    for args in [vec!["bm", "--type", "B3"], vec!["h2sharp", "--type", "B2", "--field", "real"], vec!["weyl-table", "--types", "A1,B2,G2"]] {
        let mut full = args.clone();
        full.extend(["--format", "json"]);
        let a = brauer(&full);
        let b = brauer(&full);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn bm_of_b3() {
    let (code, v) = json_of(&["bm", "--type", "B3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["invariants"], json!([2, 2, 2]));
    assert_eq!(v["result"]["split"], true);
    assert_eq!(v["result"]["linear_dim"], 1);
}

#[test]
fn verify_e2_triangular() {
    let (code, v) = json_of(&["verify", "--algebra", "E2", "--check", "triangular"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dim"], 8);
    assert_eq!(v["result"]["report"]["passed"], true);
    assert_eq!(v["result"]["report"]["mode"], "exhaustive");
}

#[test]
fn weyl_table_rows() {
    let (code, v) = json_of(&["weyl-table", "--types", "B2,D4,E8"]);
    assert_eq!(code, 0);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["h2l"], json!({"linear_dim": 1, "torsion": [2]}));
    assert_eq!(rows[1]["bm"]["torsion"], json!([2, 2, 2]));
    assert_eq!(rows[2]["mode"], "literature");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{not json").unwrap();
    assert_eq!(brauer(&["h2", "--group", broken.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(brauer(&["h2", "--group", Path::new("/nonexistent/g.json").to_str().unwrap()]).status.code(), Some(2));
    // not central
    let s3 = write(&dir, "s3.json", &json!({"kind": "permutations", "generators": [[1, 0, 2], [1, 2, 0]], "u": "g0"}));
    assert_eq!(brauer(&["h2sharp", "--group", &s3]).status.code(), Some(2));
    assert_eq!(brauer(&["h2", "--type", "E8"]).status.code(), Some(3));
    assert_eq!(brauer(&["h2", "--type", "A3", "--budget-enumeration", "5"]).status.code(), Some(3));
    assert_eq!(brauer(&["verify", "--type", "B2", "--check", "lambda", "--sigma", "identity"]).status.code(), Some(2));
    let (code, v) = json_of(&["verify", "--type", "B2", "--check", "lambda-unchecked", "--sigma", "identity"]);
    assert_eq!(code, 4);
    assert_eq!(v["status"], "failed");
    assert!(v["result"]["report"]["counterexample"].is_string());
}

#[test]
fn errors_are_reported_as_json() {
    let (code, v) = json_of(&["bm", "--type", "E8"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "error");
    assert!(v["error"].as_str().unwrap().contains("E8"));
}

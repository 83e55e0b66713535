use std::path::Path;
use std::process::{Command, Output};

fn sloshing(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sloshing")).args(args).output().expect("run binary")
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn spectrum_below_fundamental_is_empty_csv() {
    let out = sloshing(&["spectrum", "--nu-max", "0.05"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# tool: sloshing "));
    assert_eq!(data_lines(&text), vec!["nu,branch,k_squared,multiplicity,count,weyl_predicted"]);
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.json"), path(dir.path(), "b.json"));
    for p in [&a, &b] {
        let out = sloshing(&["spectrum", "--nu-max", "3", "--format", "json", "--out", p, "--gravity", "9.81"]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(x, y);
    let doc: serde_json::Value = serde_json::from_slice(&x).unwrap();
    assert_eq!(doc["header"]["config_hash"].as_str().unwrap().len(), 64);
    assert!(doc["result"]["entries"].as_array().unwrap().len() > 5);
}

#[test]
fn inverse_recovers_forward_generated_file() {
    let dir = tempfile::tempdir().unwrap();
    let meas = path(dir.path(), "m.json");
    let res = path(dir.path(), "r.json");
    let out = sloshing(&["forward", "--rho", "2", "--h", "0.3", "--branch", "plus", "--measurement-out", &meas, "--seed", "11"]);
    assert_eq!(out.status.code(), Some(0));
    let out = sloshing(&["inverse", "--measurement", &meas, "--out", &res]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&res).unwrap()).unwrap();
    let r = &doc["result"];
    assert_eq!(r["status"], "ok");
    assert_eq!(r["branch"], "plus-system");
    assert!((r["rho"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert!((r["h"].as_f64().unwrap() - 0.3).abs() < 1e-9);
}

#[test]
fn ambiguous_inverse_lists_candidates_and_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let meas = path(dir.path(), "m.json");
    sloshing(&["forward", "--rho", "1.05", "--h", "0.4", "--branch", "minus", "--measurement-out", &meas]);
    let out = sloshing(&["inverse", "--measurement", &meas]);
    assert_eq!(out.status.code(), Some(11));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.lines().any(|l| l.starts_with("error kind=multiple-roots code=11 message=")));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cands = doc["result"]["error_candidates"].as_array().unwrap();
    assert!(cands.iter().any(|c| (c["rho"].as_f64().unwrap() - 1.05).abs() < 1e-9));
}

#[test]
fn geometry_file_and_infinite_depth() {
    let dir = tempfile::tempdir().unwrap();
    let geo = path(dir.path(), "g.json");
    std::fs::write(&geo, r#"{"cross_section": {"type": "disc", "radius": 1.0}, "depth": {"finite": 2.0}}"#).unwrap();
    let out = sloshing(&["forward", "--geometry", &geo, "--levels", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(data_lines(&text)[1].starts_with("1,3.38995771667"));

    std::fs::write(&geo, r#"{"cross_section": {"type": "disc", "radius": 1.0}, "depth": "infinite"}"#).unwrap();
    let out = sloshing(&["spectrum", "--geometry", &geo]);
    assert_eq!(out.status.code(), Some(7));
}

#[test]
fn error_classes_have_distinct_codes() {
    assert_eq!(sloshing(&["spectrum", "--rho", "x"]).status.code(), Some(2));
    assert_eq!(sloshing(&["spectrum", "--geometry", "/nonexistent/g.json"]).status.code(), Some(2));
    let out = sloshing(&["spectrum", "--h=-1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error kind=invalid-parameter code=3"));
}

#[test]
fn modes_writes_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let prof = path(dir.path(), "p.csv");
    let out = sloshing(&["modes", "--levels", "2", "--profile-out", &prof, "--profile-samples", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&prof).unwrap();
    let lines = data_lines(&text);
    assert_eq!(lines[0], "level,mode_id,branch,y,value");
    assert_eq!(lines.len(), 1 + 2 * 2 * 5);
}

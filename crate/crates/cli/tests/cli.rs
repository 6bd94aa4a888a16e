use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};
use tempfile::TempDir;

fn ybg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybg")).args(args).output().expect("binary runs")
}

fn ybg_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ybg"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad stdout ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p
}

fn weights(w: [&str; 6]) -> Value {
    json!({"a1": w[0], "a2": w[1], "b1": w[2], "b2": w[3], "c1": w[4], "c2": w[5]})
}

fn real(v: &Value) -> &str {
    assert_eq!(v["im"], "0/1");
    v["re"].as_str().unwrap()
}

fn reals(m: &Value) -> Vec<&str> {
    ["a1", "a2", "b1", "b2", "c1", "c2"].iter().map(|k| real(&m[*k])).collect()
}

#[test]
fn solve_w_worked_example() {
    let dir = TempDir::new().unwrap();
    let r = write(dir.path(), "r.json", &weights(["5", "5", "4", "2", "3", "1"]));
    let r = r.to_str().unwrap();
    let out = ybg(&["solve-w", "--u", r, "--v", r]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(reals(&stdout_json(&out)), ["17/1", "17/1", "16/1", "8/1", "9/1", "1/1"]);

    let out = ybg(&["solve-w", "--u", r, "--v", r, "--brute-force"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["agree"], true);
}

#[test]
fn solve_w_reports_non_composable_pair() {
    let r = weights(["5", "5", "4", "2", "3", "1"]).to_string();
    let f = weights(["5", "-1", "4", "2", "3", "1"]).to_string();
    let out = ybg(&["solve-w", "--u", &r, "--v", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "NotComposable");
}

#[test]
fn compose_mismatch_exits_one_with_both_labels() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.json", &json!({"matrix": weights(["5", "5", "4", "2", "3", "1"]), "d1": "3/2", "d2": "3"}));
    let b = write(dir.path(), "b.json", &json!({"matrix": weights(["-2", "-6", "-2", "-3", "1", "6"]), "d1": "3", "d2": "2/3"}));
    let out = ybg(&["compose", "--u", a.to_str().unwrap(), "--v", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    assert_eq!(report["error"], "ObjectMismatch");
    assert_eq!(real(&report["left"]["d1"]), "3/2");
    assert_eq!(real(&report["left"]["d2"]), "3/1");
    assert_eq!(real(&report["right"]["d1"]), "1/1");
    assert_eq!(real(&report["right"]["d2"]), "2/1");
}

#[test]
fn compose_and_reparse() {
    let r = json!({"matrix": weights(["5", "5", "4", "2", "3", "1"]), "d1": "3/2", "d2": "3"}).to_string();
    let out = ybg(&["compose", "--u", &r, "--v", &r]);
    assert_eq!(out.status.code(), Some(0));
    let w = stdout_json(&out);
    assert_eq!(reals(&w["matrix"]), ["17/1", "17/1", "16/1", "8/1", "9/1", "1/1"]);
    // Output feeds back in through the same schema.
    let out = ybg_stdin(&["delta", "--u", "-"], &w.to_string());
    assert_eq!(out.status.code(), Some(0));
    let d = stdout_json(&out);
    assert_eq!(real(&d["delta"]["d1"]), "3/2");
    assert_eq!(real(&d["delta_star"]["d2"]), "3/1");
}

#[test]
fn five_vertex_and_group_elements() {
    let u5 = json!({"matrix": weights(["2", "3", "1", "0", "1", "2"]), "eps": "2"}).to_string();
    let v5 = json!({"matrix": weights(["1", "1", "1", "0", "1", "-1"]), "eps": "2"}).to_string();
    let out = ybg(&["compose", "--u", &u5, "--v", &v5]);
    assert_eq!(out.status.code(), Some(0));
    let w = stdout_json(&out);
    assert_eq!(reals(&w["matrix"]), ["2/1", "3/1", "2/1", "0/1", "1/1", "-2/1"]);
    assert_eq!(real(&w["eps"]), "2/1");

    let g = json!({"g": [["5", "-2"], ["4", "-1"]], "c1": "3"}).to_string();
    let out = ybg(&["compose", "--u", &g, "--v", &g]);
    assert_eq!(out.status.code(), Some(0));
    let h = stdout_json(&out);
    assert_eq!(real(&h["g"][1][1]), "-7/1");

    let out = ybg(&["compose", "--u", &g, "--v", &u5]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["error"], "TagMismatch");
}

#[test]
fn classify_star_delta_idempotent_weights() {
    let out = ybg(&["classify", "--u", &weights(["0", "0", "2", "3", "6", "1"]).to_string()]);
    assert_eq!(stdout_json(&out)["region"], "Omega_a");

    let ga = json!({"matrix": weights(["0", "0", "2", "3", "6", "1"]), "d1": "1", "d2": "2"}).to_string();
    let out = ybg(&["star", "--u", &ga]);
    let s = stdout_json(&out);
    assert_eq!(reals(&s["matrix"]), ["-2/1", "-6/1", "-2/1", "-3/1", "1/1", "6/1"]);
    assert_eq!(real(&s["d2"]), "2/3");

    let out = ybg(&["delta", "--u", &weights(["5", "5", "4", "2", "3", "1"]).to_string()]);
    assert_eq!(real(&stdout_json(&out)["block"]), "9/2");

    let out = ybg(&["idempotent", "--d", r#"{"d1": "5", "d2": "7"}"#]);
    assert_eq!(reals(&stdout_json(&out)["matrix"]), ["1/1", "1/1", "0/1", "0/1", "1/1", "1/1"]);

    let params = r#"{"q1": "2", "q2": "1", "z1": "9", "z2": "1", "w": "1"}"#;
    let out = ybg(&["weights", "--family", "cf", "--params", params]);
    assert_eq!(reals(&stdout_json(&out)), ["17/1", "17/1", "16/1", "8/1", "9/1", "1/1"]);
}

#[test]
fn sampling_is_seeded_and_deterministic() {
    let d = r#"{"d1": "3/2", "d2": "3"}"#;
    let a = ybg(&["sample", "--d", d, "--side", "target", "--stratum", "gamma-a", "--seed", "4"]);
    let b = ybg(&["sample", "--d", d, "--side", "target", "--stratum", "gamma-a", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let delta = ybg_stdin(&["delta", "--u", "-"], std::str::from_utf8(&a.stdout).unwrap());
    let labels = stdout_json(&delta);
    assert_eq!(real(&labels["delta_star"]["d1"]), "3/2");

    let missing = ybg(&["sample", "--d", d]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(ybg(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(ybg(&["classify", "--u", "{not json"]).status.code(), Some(2));
    assert_eq!(ybg(&["classify", "--u", "/nonexistent/file.json"]).status.code(), Some(2));
    let out = ybg(&["classify", "--u", &weights(["1", "1", "0", "0", "0", "1"]).to_string()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn verify_all_passes() {
    let out = ybg(&["verify", "--suite", "all", "--samples", "100", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = stdout_json(&out);
    assert_eq!(report["suite"], "all");
    assert_eq!(report["samples"], 100);
    assert_eq!(report["seed"], 7);
    let checks = report["checks"].as_array().unwrap();
    assert!(checks.len() >= 13);
    assert!(checks.iter().all(|c| c["pass"] == true));
}

#[test]
fn model_pipeline() {
    let dir = TempDir::new().unwrap();
    let out = ybg(&["model-build", "--kind", "nf", "--rows", "3", "--cols", "3", "--seed", "11", "--mixed"]);
    assert_eq!(out.status.code(), Some(0));
    let model = write(dir.path(), "model.json", &stdout_json(&out));
    let model = model.to_str().unwrap();

    let out = ybg(&["model-check", "--model", model]);
    assert_eq!(out.status.code(), Some(0));
    let report = stdout_json(&out);
    assert_eq!(report["row_solvable"], true);
    assert_eq!(report["column_solvable"], true);

    let bc = json!({"mode": "periodic", "south": [1, 0, 1], "north": [0, 1, 1]}).to_string();
    let out = ybg(&["model-partition", "--model", model, "--boundary", &bc]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["agree"], true);

    let out = ybg(&["model-transfer-commute", "--model", model]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["checks"].as_array().unwrap().len(), 2);

    // Rebuilding from phi/psi alone reproduces the same model.
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(model).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("gamma");
    let input = write(dir.path(), "input.json", &v);
    let rebuilt = ybg(&["model-build", "--input", input.to_str().unwrap()]);
    assert_eq!(rebuilt.status.code(), Some(0));
    let original: Value = serde_json::from_str(&std::fs::read_to_string(model).unwrap()).unwrap();
    assert_eq!(stdout_json(&rebuilt), original);
}

#[test]
fn broken_grid_fails_model_check() {
    let out = ybg(&["model-build", "--kind", "nf", "--rows", "2", "--cols", "2", "--seed", "3"]);
    let mut model = stdout_json(&out);
    let obj = model.as_object_mut().unwrap();
    obj.remove("phi");
    obj.remove("psi");
    obj.remove("d");
    obj.get_mut("gamma").unwrap()[1][1] = json!({"matrix": weights(["5", "5", "4", "2", "3", "1"]), "d1": "3/2", "d2": "3"});
    let out = ybg(&["model-check", "--model", &model.to_string()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout_json(&out);
    let failed: Vec<_> = report["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["witness"].is_string()));
}

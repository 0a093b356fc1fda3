use std::process::{Command, Output};

use serde_json::Value;

fn g2kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2kit")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = g2kit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn classify_w1() {
    let v = json(&["classify-form", "--n", "7", "--form", "e[1,2,5]+e[1,3,6]+e[1,4,7]"]);
    assert_eq!(v["label"], "W1");
    assert_eq!(v["q_rank"], 1);
    assert_eq!(v["stab_dim"], 28);
}

#[test]
fn classify_from_json_file() {
    let dir = std::env::temp_dir().join(format!("g2kit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("form.json");
    let w = g2kit::KForm::parse(7, "e[1,2,3]+e[1,4,5]+e[1,6,7]+e[2,4,6]-e[3,5,7]").unwrap();
    std::fs::write(&path, w.to_json().to_string()).unwrap();
    let v = json(&["classify-form", "--n", "7", "--form", path.to_str().unwrap()]);
    assert_eq!(v["label"], "W5");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn magic_square_table() {
    let v = json(&["magic-square", "--table"]);
    assert_eq!(v["table"][3]["entries"][3]["dim"], 248);
    assert_eq!(v["table"][0]["entries"][0]["name"], "sl2");
    let out = g2kit(&["--format", "text", "magic-square", "--table"]);
    assert!(String::from_utf8_lossy(&out.stdout).trim_end().ends_with("248"));
}

#[test]
fn build_and_verify_round_trip() {
    let dir = std::env::temp_dir().join(format!("g2kit-sc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sp6.json");
    let v = json(&["magic-square", "--build", "R", "H", "--verify", "full", "--export", path.to_str().unwrap()]);
    assert_eq!(v["dim"], 21);
    assert_eq!(v["jacobi"]["passed"], true);
    assert_eq!(v["killing_rank"], 21);
    let r = json(&["verify", "--algebra", path.to_str().unwrap(), "--mode", "full"]);
    assert_eq!(r["passed"], true);

    let mut sc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let entry = sc["entries"][0][2].as_array_mut().unwrap();
    let k = entry.iter().position(|c| c != "0").unwrap();
    entry[k] = Value::from("3");
    std::fs::write(&path, sc.to_string()).unwrap();
    let bad = g2kit(&["verify", "--algebra", path.to_str().unwrap(), "--mode", "full"]);
    assert_eq!(bad.status.code(), Some(1));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn full_e8_needs_deep() {
    let out = g2kit(&["magic-square", "--build", "O", "O", "--verify", "full"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gradings_and_dims() {
    let v = json(&["grading", "--type", "E8", "--node", "1", "--affine"]);
    assert_eq!(v["dims"], serde_json::json!([[0, 120], [1, 128]]));
    assert_eq!(v["degree_zero_type"], "D8");
    let f = json(&["grading", "--type", "F4", "--node", "4"]);
    let dims: Vec<u64> = f["dims"].as_array().unwrap().iter().map(|d| d[1].as_u64().unwrap()).collect();
    assert_eq!(dims, [7, 8, 22, 8, 7]);
    let d = json(&["dims", "--a", "8"]);
    assert_eq!(d["v4"], 248);
    assert_eq!(d["x4"], 57);
}

#[test]
fn tables_and_derivations() {
    let o = json(&["mul-table", "--algebra", "O"]);
    assert_eq!(o["dim"], 8);
    assert_eq!(o["table"].as_array().unwrap().len(), 8);
    let s = json(&["mul-table", "--algebra", "sextonion"]);
    assert_eq!(s["dim"], 6);
    assert_eq!(s["q_rank"], 4);
    assert_eq!(json(&["derive", "--algebra", "O"])["dim"], 14);
    assert_eq!(json(&["derive", "--algebra", "H"])["dim"], 3);
}

#[test]
fn jordan_operations() {
    let m = r#"{"a":1,"diag":["1","2","3"],"off":[["1"],["0"],["0"]]}"#;
    assert_eq!(json(&["jordan", "--a", "1", "det", "--input", m])["det"], "5");
    assert_eq!(json(&["jordan", "--a", "1", "rank", "--input", m])["rank"], 3);
    assert_eq!(json(&["jordan", "--a", "1", "ch-check", "--input", m])["passed"], true);
    let mismatch = g2kit(&["jordan", "--a", "2", "det", "--input", m]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn spinor_three_form() {
    let v = json(&["spinor", "--omega-chi", "--chi", "1+f123"]);
    assert_eq!(v["label"], "W5");
    assert_eq!(v["stab_dim"], 14);
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(g2kit(&["classify-form", "--n", "7", "--form", "e[1,2"]).status.code(), Some(2));
    assert_eq!(g2kit(&["dims", "--a", "3"]).status.code(), Some(2));
    assert_eq!(g2kit(&["grading", "--type", "Q3", "--node", "1"]).status.code(), Some(2));
    assert_eq!(g2kit(&["classify-form", "--n", "7", "--bogus"]).status.code(), Some(2));
    assert_eq!(g2kit(&["verify", "all", "--only", "17"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic() {
    let args = ["verify", "all", "--only", "6,7,14,16", "--seed", "3"];
    let a = g2kit(&args);
    let b = g2kit(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 4);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_all_passes() {
    let out = g2kit(&["--format", "text", "verify", "all", "--seed", "0"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "{text}");
    assert_eq!(text.lines().filter(|l| l.contains(" PASS ")).count(), 16, "{text}");
}

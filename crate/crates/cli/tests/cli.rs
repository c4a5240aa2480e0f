use serde_json::Value;
use std::process::{Command, Output};

fn latjac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latjac")).args(args).env_remove("LATJAC_PREC").env_remove("LATJAC_GOLDEN_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    let o = latjac(&a);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn dim_a2_weight_4() {
    let v = json(&["dim", "A2", "--k", "4", "--h", "0"]);
    assert_eq!(v["value"], "1");
    assert_eq!(v["exactness"], "Exact");
    // decimals are accepted and h is read mod 24
    let w = json(&["dim", "A2", "--k", "4.0", "--h", "-24"]);
    assert_eq!(w["value"], "1");
}

#[test]
fn hp_a3_even() {
    let o = latjac(&["hp", "A3", "--h", "0", "--parity", "even"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "t^4 + t^6 + t^8");
    let v = json(&["hp", "A3", "--h", "0", "--parity", "even"]);
    let ks: Vec<&str> = v["numerator"].as_array().unwrap().iter().map(|t| t["k"].as_str().unwrap()).collect();
    assert_eq!(ks, ["4", "6", "8"]);
}

#[test]
fn hp_override() {
    let v = json(&["hp", "A2", "--h", "0", "--parity", "even", "--override", "2=0,4=1"]);
    assert_eq!(v["unknown"].as_array().unwrap().len(), 0);
    assert_eq!(latjac(&["hp", "A2", "--h", "0", "--parity", "even", "--override", "4"]).status.code(), Some(1));
}

#[test]
fn info_and_singular() {
    let v = json(&["info", "Z(3)+Z2"]);
    assert_eq!(v["gram"], serde_json::json!([[3, 0, 0], [0, 1, 0], [0, 0, 1]]));
    assert_eq!(v["det"], 3);
    let s = json(&["singular", "A2", "--all", "--basis"]);
    let spaces = s["spaces"].as_array().unwrap();
    assert_eq!(spaces.len(), 24);
    let nonzero: Vec<i64> = spaces.iter().filter(|r| r["dim"] != 0).map(|r| r["h"].as_i64().unwrap()).collect();
    assert_eq!(nonzero, [8]);
    assert_eq!(spaces[8]["basis"].as_array().unwrap().len(), 1);
}

#[test]
fn qexp_catalog() {
    let v = json(&["qexp", "theta", "--prec", "3"]);
    assert_eq!(v["N"], "3");
    assert_eq!(v["k"], "1/2");
    let again = json(&["qexp", "theta", "--prec", "3"]);
    assert_eq!(v, again);
    let e8 = Command::new(env!("CARGO_BIN_EXE_latjac")).args(["qexp", "theta:E8", "--json"]).env("LATJAC_PREC", "1").output().unwrap();
    let e8: Value = serde_json::from_slice(&e8.stdout).unwrap();
    assert_eq!(e8["N"], "1");
    // 1 + 240 vectors of norm 2
    assert_eq!(e8["entries"].as_array().unwrap().len(), 241);
}

#[test]
fn exit_codes() {
    assert_eq!(latjac(&["info", "E9"]).status.code(), Some(1));
    assert_eq!(latjac(&["info", "A2 +"]).status.code(), Some(1));
    assert_eq!(latjac(&["dim", "A2", "--k", "1/3", "--h", "0"]).status.code(), Some(1));
    assert_eq!(latjac(&["qexp", "nonsense"]).status.code(), Some(1));
    assert_eq!(latjac(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(latjac(&["info", "gram:[[1,2],[2,1]]"]).status.code(), Some(2));
    assert_eq!(latjac(&["qexp", "theta:A2"]).status.code(), Some(2));
    let o = latjac(&["info", "A2+", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["error"], "usage");
    assert!(v["message"].as_str().unwrap().contains("position 3"));
}

#[test]
fn verify_tables_and_bad_golden() {
    let o = latjac(&["verify", "--suite", "tables"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 5);

    // a golden table with one wrong entry makes criterion 1 fail with exit code 3
    let dir = std::env::temp_dir().join(format!("latjac-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/golden");
    let mut t1: Value = serde_json::from_str(&std::fs::read_to_string(format!("{golden}/table1.json")).unwrap()).unwrap();
    t1["table"]["A2"]["even"]["4"] = 2.into();
    std::fs::write(dir.join("table1.json"), t1.to_string()).unwrap();
    std::fs::copy(format!("{golden}/a2_even_dims.json"), dir.join("a2_even_dims.json")).unwrap();
    let o = latjac(&["verify", "--suite", "tables", "--json", "--golden-dir", dir.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(o.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], false);
    assert_eq!(v["criteria"][0]["passed"], false);
}

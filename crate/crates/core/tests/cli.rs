use std::process::{Command, Output};

use serde_json::Value;

fn ellgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellgen")).args(args).env_remove("ELLGEN_QORDER").output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn genus_examples() {
    let v = json_of(&ellgen(&["genus", "--manifold", "builtin:HP2", "--spec", "generic"]));
    assert_eq!(v["value"], "epsilon");
    let v = json_of(&ellgen(&["genus", "--manifold", "builtin:CP3", "--spec", "ahat"]));
    assert_eq!(v["value"], "0");
    let v = json_of(&ellgen(&["genus", "--manifold", "builtin:V(4,4)", "--spec", "signature"]));
    assert_eq!(v["cross_check"], "twisted-index pipeline agrees");
    let v = json_of(&ellgen(&["genus", "--manifold", "CP2", "--spec", "custom", "--delta", "-1/8", "--epsilon", "0"]));
    assert_eq!(v["value"], "-1/8");
}

#[test]
fn expand_examples() {
    let v = json_of(&ellgen(&["expand", "--manifold", "builtin:HP2", "--cusp", "ahat", "--qorder", "6"]));
    assert_eq!(v["q_coefficients"][0]["q"], "-1");
    assert_eq!(v["q_coefficients"][0]["coefficient"], "0");
    let v = json_of(&ellgen(&["expand", "--manifold", "builtin:CP2", "--cusp", "signature", "--qorder", "0"]));
    assert_eq!(v["series"]["coefficients"], serde_json::json!(["1"]));
    let v = json_of(&ellgen(&["expand", "--manifold", "builtin:V(4,4)", "--cusp", "ahat", "--qorder", "1"]));
    // Φ₀ twists with TM⊗C; the holomorphic tangent bundle alone gives half
    assert_eq!(v["q_coefficients"][1]["coefficient"], "100");
    assert_eq!(v["twisted_indices"]["ahat_tm_holomorphic"], "-50");
}

#[test]
fn default_qorder_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ellgen"))
        .args(["expand", "--manifold", "CP2", "--cusp", "signature"])
        .env("ELLGEN_QORDER", "2")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["qorder"], 2);
    assert_eq!(json_of(&ellgen(&["expand", "--manifold", "CP2", "--cusp", "signature"]))["qorder"], 6);
}

#[test]
fn rigidity_example() {
    let v = json_of(&ellgen(&["rigidity", "--action", "builtin:HP2_diagonal(1,2,4)", "--lambda", "2,3,5", "--qorder", "3"]));
    assert_eq!(v["status"], "PASS");
    let v = json_of(&ellgen(&["rigidity", "--action", "builtin:CP2_linear(0,1,2)", "--lambda", "2,i", "--qorder", "2"]));
    assert_eq!(v["status"], "EXPERIMENTAL");
}

#[test]
fn obstruct_examples() {
    let v = json_of(&ellgen(&["obstruct", "--weights", "[1,3,4]", "--order", "4"]));
    assert_eq!(v["m_o"], "1/2");
    assert_eq!(v["vanish_prediction"]["cyclic_m_o"], 1);
    let v = json_of(&ellgen(&["obstruct", "--matrix", "[[2,1,0,1],[1,1,1,0]]", "--prime", "2", "--code-r", "1"]));
    assert_eq!(v["normal_form"]["shape_ok"], true);
    assert_eq!(v["code_audit"]["words"], 4);
    let v = json_of(&ellgen(&["obstruct", "--rfpd", "[[8,[4,4]]]"]));
    assert_eq!(v["rfpd"], false);
    let v = json_of(&ellgen(&["obstruct", "--action", "builtin:HP2_diagonal(1,2,4)", "--order", "2"]));
    assert_eq!(v["action_cross_check"]["pass"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(ellgen(&["genus", "--manifold", "builtin:nope"]).status.code(), Some(2));
    assert_eq!(ellgen(&["expand", "--manifold", "CP2", "--cusp", "middle"]).status.code(), Some(2));
    assert_eq!(ellgen(&["obstruct", "--matrix", "[[1,1],[3,3]]"]).status.code(), Some(2));
    assert_eq!(ellgen(&["rigidity", "--action", "CP2_linear(0,1,2)", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(ellgen(&["expand", "--manifold", "CP2", "--qorder", "1000"]).status.code(), Some(4));
    let fake = ellgen(&["obstruct", "--weights", "[[1,1,1,1]]", "--order", "2", "--manifold", "HP2", "--qorder", "2"]);
    assert_eq!(fake.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&fake.stdout).unwrap();
    assert_eq!(v["cross_check"]["pass"], false);
}

#[test]
fn formats_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.csv");
    let out = ellgen(&["verify", "--suite", "1,5", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("id,name,status,detail\n1,generating-function,PASS,"));
    let out = ellgen(&["verify", "--suite", "5", "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("PASS  5 ahat-vanishing"));
    let out = ellgen(&["genus", "--manifold", "HP2", "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("value: epsilon\n"));
}

#[test]
fn json_is_deterministic_and_float_free() {
    let args = ["expand", "--manifold", "CP2xHP2", "--cusp", "ahat", "--qorder", "3"];
    let (a, b) = (ellgen(&args), ellgen(&args));
    assert_eq!(a.stdout, b.stdout);
    fn no_floats(v: &Value) -> bool {
        match v {
            Value::Number(n) => n.is_i64() || n.is_u64(),
            Value::Array(a) => a.iter().all(no_floats),
            Value::Object(m) => m.values().all(no_floats),
            _ => true,
        }
    }
    assert!(no_floats(&json_of(&a)));
}

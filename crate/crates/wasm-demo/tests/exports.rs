use ordbubble_wasm_demo::{decompose, topology, utility};
use serde_json::Value;

const TWO_BUBBLES: &str = r#"{
  "elements": ["x1", "x2", "y"],
  "pairs": [["x1", "x1"], ["x2", "x2"], ["y", "y"], ["x1", "y"], ["x2", "y"]]
}"#;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn decompose_two_bubbles() {
    let v = parse(decompose(TWO_BUBBLES));
    assert_eq!(v["ok"], true);
    let system = &v["result"]["system"];
    assert_eq!(system["index"].as_array().unwrap().len(), 2);
    assert!(v["invariants"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn utility_of_matrix() {
    let v = parse(utility("3\n111\n011\n001\n"));
    assert_eq!(v["ok"], true);
    assert_eq!(v["result"]["utility"]["values"]["e1"], "1/2");
}

#[test]
fn topology_reports_gaps() {
    let v = parse(topology(TWO_BUBBLES));
    assert_eq!(v["result"]["connected"], false);
    assert_eq!(v["result"]["gaps"].as_array().unwrap().len(), 2);
}

#[test]
fn errors_are_returned_as_json() {
    let v = parse(decompose("2\n01\n"));
    assert_eq!(v["ok"], false);
    assert!(v["error"].as_str().unwrap().contains("parse error"));
    let v = parse(utility(""));
    assert_eq!(v["ok"], false);
}

#[test]
fn exports_match_plain_functions() {
    assert_eq!(ordbubble_wasm_demo::decompose_json(TWO_BUBBLES), decompose(TWO_BUBBLES));
}

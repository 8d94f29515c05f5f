//! Browser bindings: each export takes the text of an input file (relation
//! JSON, matrix or bubble-system JSON) and returns a JSON string, either
//! `{"ok": true, "result": ..., "invariants": [...]}` or
//! `{"ok": false, "error": "..."}`.

use ordbubble::cli::{run_on_text, Command, Verb};
use serde_json::json;
use wasm_bindgen::prelude::wasm_bindgen;

fn respond(verb: Verb, input: &str) -> String {
    let out = match run_on_text(&Command::new(verb), input) {
        Ok((result, invariants)) => json!({ "ok": true, "result": result, "invariants": invariants }),
        Err(e) => json!({ "ok": false, "error": e.to_string() }),
    };
    out.to_string()
}

pub fn decompose(input: &str) -> String {
    respond(Verb::Decompose, input)
}

pub fn utility(input: &str) -> String {
    respond(Verb::Utility, input)
}

pub fn topology(input: &str) -> String {
    respond(Verb::Topology, input)
}

#[wasm_bindgen]
pub fn decompose_json(input: &str) -> String {
    decompose(input)
}

#[wasm_bindgen]
pub fn utility_json(input: &str) -> String {
    utility(input)
}

#[wasm_bindgen]
pub fn topology_json(input: &str) -> String {
    topology(input)
}

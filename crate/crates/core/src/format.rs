//! JSON and matrix file formats.
//!
//! Relation JSON: `{"elements": ["a", ...], "pairs": [["a", "b"], ...]}`.
//! Matrix: first line `n`, then `n` rows of `0`/`1`, labels `e0..e{n-1}`.
//! Partition JSON: `{"blocks": [["a", "b"], ["c"]]}`.
//! Bubble-system JSON: `{"index": ["I", "J"], "bubbles": [{"label": "I",
//! "elements": [...], "inner_pairs": [...]}, ...]}` with an optional
//! top-level `"elements"` fixing the carrier order.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::factor::Partition;
use crate::order_ext::{IntervalKind, Rational, UtilityAssignment};
use crate::relation::{Carrier, Relation};
use crate::structure::{BubbleSpec, BubbleSystem};

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationFile {
    pub elements: Vec<String>,
    pub pairs: Vec<(String, String)>,
}

impl RelationFile {
    pub fn into_relation(self) -> Result<Relation> {
        let carrier = Carrier::new(self.elements)?;
        Relation::from_pairs(carrier, &self.pairs)
    }

    pub fn from_relation(r: &Relation) -> Self {
        RelationFile {
            elements: r.carrier().labels().to_vec(),
            pairs: r.label_pairs(),
        }
    }
}

pub fn parse_relation_json(text: &str) -> Result<Relation> {
    serde_json::from_str::<RelationFile>(text)
        .map_err(json_error)?
        .into_relation()
}

pub fn relation_json(r: &Relation) -> Value {
    serde_json::to_value(RelationFile::from_relation(r)).expect("plain data")
}

pub fn parse_matrix(text: &str) -> Result<Relation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first_line, header) = lines.next().ok_or_else(|| Error::parse("line 1", "missing size line"))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::parse(format!("line {first_line}"), format!("expected a size, found `{header}`")))?;
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let mut rows: Vec<Vec<bool>> = Vec::with_capacity(n);
    for (line_no, line) in lines {
        let row: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
        if rows.len() == n {
            return Err(Error::parse(format!("line {line_no}"), format!("more than {n} rows")));
        }
        if row.len() != n {
            return Err(Error::parse(
                format!("line {line_no}"),
                format!("row has {} entries, expected {n}", row.len()),
            ));
        }
        let mut bits = Vec::with_capacity(n);
        for (col, c) in row.into_iter().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::parse(
                        format!("line {line_no}, column {}", col + 1),
                        format!("expected 0 or 1, found `{other}`"),
                    ))
                }
            }
        }
        rows.push(bits);
    }
    if rows.len() != n {
        return Err(Error::parse("end of input", format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(Relation::from_fn(Carrier::canonical(n)?, |i, j| rows[i][j]))
}

pub fn matrix_string(r: &Relation) -> String {
    let n = r.len();
    let mut s = format!("{n}\n");
    for i in 0..n {
        s.extend((0..n).map(|j| if r.contains(i, j) { '1' } else { '0' }));
        s.push('\n');
    }
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionFile {
    pub blocks: Vec<Vec<String>>,
}

pub fn parse_partition_json(text: &str, carrier: Arc<Carrier>) -> Result<Partition> {
    let file: PartitionFile = serde_json::from_str(text).map_err(json_error)?;
    Partition::from_label_blocks(carrier, &file.blocks)
}

pub fn partition_json(p: &Partition) -> Value {
    serde_json::to_value(PartitionFile {
        blocks: p.label_blocks(),
    })
    .expect("plain data")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BubbleEntry {
    pub label: String,
    pub elements: Vec<String>,
    pub inner_pairs: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BubbleFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    pub index: Vec<String>,
    pub bubbles: Vec<BubbleEntry>,
}

impl BubbleFile {
    pub fn into_system(self) -> Result<BubbleSystem> {
        let carrier = self.elements.map(Carrier::new).transpose()?;
        if self.index.len() != self.bubbles.len() {
            return Err(Error::InvalidSystem("index and bubbles differ in length".into()));
        }
        let mut specs = Vec::with_capacity(self.index.len());
        for label in &self.index {
            let entry = self
                .bubbles
                .iter()
                .find(|b| &b.label == label)
                .ok_or_else(|| Error::InvalidSystem(format!("no bubble for index `{label}`")))?;
            specs.push(BubbleSpec {
                label: entry.label.clone(),
                elements: entry.elements.clone(),
                inner_pairs: entry.inner_pairs.clone(),
            });
        }
        BubbleSystem::from_specs(carrier, &specs)
    }

    pub fn from_system(sys: &BubbleSystem) -> Self {
        let specs = sys.specs();
        BubbleFile {
            elements: Some(sys.carrier().labels().to_vec()),
            index: specs.iter().map(|s| s.label.clone()).collect(),
            bubbles: specs
                .into_iter()
                .map(|s| BubbleEntry {
                    label: s.label,
                    elements: s.elements,
                    inner_pairs: s.inner_pairs,
                })
                .collect(),
        }
    }
}

pub fn parse_bubble_json(text: &str) -> Result<BubbleSystem> {
    serde_json::from_str::<BubbleFile>(text)
        .map_err(json_error)?
        .into_system()
}

pub fn bubble_json(sys: &BubbleSystem) -> Value {
    serde_json::to_value(BubbleFile::from_system(sys)).expect("plain data")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UtilityFile {
    interval: String,
    values: std::collections::BTreeMap<String, String>,
}

/// Parses a utility report against a carrier; every element needs a value.
pub fn parse_utility_json(text: &str, carrier: Arc<Carrier>) -> Result<UtilityAssignment> {
    let file: UtilityFile = serde_json::from_str(text).map_err(json_error)?;
    let interval: IntervalKind = file.interval.parse()?;
    if let Some(extra) = file.values.keys().find(|k| carrier.index_of(k).is_err()) {
        return Err(Error::UnknownLabel(extra.clone()));
    }
    let values = carrier
        .labels()
        .iter()
        .map(|l| {
            file.values
                .get(l)
                .ok_or_else(|| Error::parse(format!("values.{l}"), "missing value"))?
                .parse::<Rational>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UtilityAssignment {
        carrier,
        values,
        interval,
    })
}

/// A parsed input file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Relation(Relation),
    System(BubbleSystem),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Auto,
    RelationJson,
    Matrix,
    BubbleJson,
}

impl std::str::FromStr for InputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(InputFormat::Auto),
            "relation_json" => Ok(InputFormat::RelationJson),
            "matrix" => Ok(InputFormat::Matrix),
            "bubble_json" => Ok(InputFormat::BubbleJson),
            other => Err(Error::Validation(format!("unknown format `{other}`"))),
        }
    }
}

/// Parses `text`; `Auto` treats JSON objects with `bubbles` as bubble
/// systems, other JSON as relations, and anything else as a matrix.
pub fn parse_text(text: &str, format: InputFormat, path_hint: Option<&Path>) -> Result<Input> {
    let format = match format {
        InputFormat::Auto => detect(text, path_hint),
        f => f,
    };
    match format {
        InputFormat::RelationJson => parse_relation_json(text).map(Input::Relation),
        InputFormat::Matrix => parse_matrix(text).map(Input::Relation),
        InputFormat::BubbleJson => parse_bubble_json(text).map(Input::System),
        InputFormat::Auto => unreachable!("resolved above"),
    }
}

fn detect(text: &str, path_hint: Option<&Path>) -> InputFormat {
    let ext = path_hint.and_then(|p| p.extension()).and_then(|e| e.to_str());
    let looks_json = text.trim_start().starts_with('{');
    if ext == Some("json") || looks_json {
        match serde_json::from_str::<Value>(text) {
            Ok(Value::Object(m)) if m.contains_key("bubbles") => InputFormat::BubbleJson,
            _ => InputFormat::RelationJson,
        }
    } else {
        InputFormat::Matrix
    }
}

pub fn parse_input(path: &Path, format: InputFormat) -> Result<Input> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    parse_text(&text, format, Some(path))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_json_round_trip() {
        let r = parse_relation_json(r#"{"elements":["a","b"],"pairs":[["a","b"],["a","a"]]}"#).unwrap();
        assert_eq!(r.count(), 2);
        let back = parse_relation_json(&relation_json(&r).to_string()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn relation_json_errors() {
        assert!(matches!(parse_relation_json("{"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_relation_json(r#"{"elements":["a"],"pairs":[["a","z"]]}"#),
            Err(Error::UnknownLabel(_))
        ));
    }

    #[test]
    fn matrix_round_trip_and_ragged_rows() {
        let r = parse_matrix("3\n110\n010\n111\n").unwrap();
        assert_eq!(r.carrier().labels(), ["e0", "e1", "e2"]);
        assert_eq!(matrix_string(&r), "3\n110\n010\n111\n");
        match parse_matrix("2\n10\n1\n") {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "line 3"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_matrix("2\n10\n").is_err());
        assert!(parse_matrix("2\n1x\n01\n").is_err());
    }

    #[test]
    fn bubble_json_round_trip() {
        let text = r#"{"index":["I","J"],"bubbles":[
            {"label":"J","elements":["y"],"inner_pairs":[["y","y"]]},
            {"label":"I","elements":["x1","x2"],"inner_pairs":[["x1","x1"],["x2","x2"]]}]}"#;
        let sys = parse_bubble_json(text).unwrap();
        assert_eq!(sys.carrier().labels(), ["x1", "x2", "y"]);
        let back = parse_bubble_json(&bubble_json(&sys).to_string()).unwrap();
        assert_eq!(back, sys);
    }

    #[test]
    fn bubble_json_rejects_non_equivalence() {
        let text = r#"{"index":["I"],"bubbles":[
            {"label":"I","elements":["a","b"],"inner_pairs":[["a","a"],["b","b"],["a","b"]]}]}"#;
        assert!(matches!(parse_bubble_json(text), Err(Error::Validation(_))));
    }

    #[test]
    fn partition_and_utility_round_trip() {
        let c = Carrier::new(["a", "b", "c"]).unwrap();
        let p = parse_partition_json(r#"{"blocks":[["c"],["b","a"]]}"#, c.clone()).unwrap();
        assert_eq!(partition_json(&p).to_string(), r#"{"blocks":[["a","b"],["c"]]}"#);
        let u = parse_utility_json(r#"{"interval":"[0,1]","values":{"a":"0","b":"1/2","c":"1"}}"#, c).unwrap();
        assert_eq!(
            serde_json::to_string(&u).unwrap(),
            r#"{"interval":"[0,1]","values":{"a":"0","b":"1/2","c":"1"}}"#
        );
    }

    #[test]
    fn auto_detection() {
        assert!(matches!(parse_text("2\n10\n01", InputFormat::Auto, None), Ok(Input::Relation(_))));
        let sys = r#"{"index":["I"],"bubbles":[{"label":"I","elements":["a"],"inner_pairs":[["a","a"]]}]}"#;
        assert!(matches!(parse_text(sys, InputFormat::Auto, None), Ok(Input::System(_))));
    }
}

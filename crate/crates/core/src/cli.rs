//! Command dispatch and deterministic JSON reports for the `ordbubble` binary.

use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::format::{bubble_json, parse_text, partition_json, relation_json, Input, InputFormat};
use crate::invariants::{random_sweep, sweep, Battery, InvariantCheck, Mutation, MAX_EXHAUSTIVE_SWEEP};
use crate::order_ext::{generalized_utility, szpilrajn_extend, system_utility, utility_conditions};
use crate::relation::Relation;
use crate::structure::{bubble_compose, bubble_decompose, decompose, necessary_conditions, BubbleSystem, Decomposition};
use crate::topology::{projection_check, topology_report, utility_continuity};

pub const DEFAULT_SEED: u64 = 0x0b0b_b1e5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verb {
    Analyze,
    Decompose,
    Bubble,
    Extend,
    Utility,
    Topology,
    Sweep,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Analyze => "analyze",
            Verb::Decompose => "decompose",
            Verb::Bubble => "bubble",
            Verb::Extend => "extend",
            Verb::Utility => "utility",
            Verb::Topology => "topology",
            Verb::Sweep => "sweep",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Command {
    pub verb: Verb,
    pub input: Option<PathBuf>,
    pub format: InputFormat,
    pub n: Option<usize>,
    pub seed: u64,
    /// Relation count for the randomized sweep.
    pub random: Option<usize>,
    pub mutation: Option<Mutation>,
}

impl Command {
    pub fn new(verb: Verb) -> Self {
        Command {
            verb,
            input: None,
            format: InputFormat::Auto,
            n: None,
            seed: DEFAULT_SEED,
            random: None,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub verb: String,
    pub input_digest: String,
    pub result: Value,
    pub invariants: Vec<InvariantCheck>,
}

impl Report {
    pub fn all_hold(&self) -> bool {
        self.invariants.iter().all(|c| c.holds)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("plain data");
        let mut s = serde_json::to_string_pretty(&v).expect("plain data");
        s.push('\n');
        s
    }

    /// `0` when every invariant holds, `2` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_hold() {
            0
        } else {
            2
        }
    }
}

/// `1` for input and validation errors, `2` for invariant violations.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::InvariantViolated { .. } => 2,
        _ => 1,
    }
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads the input (if any) and runs the command.
pub fn run(cmd: &Command) -> Result<Report> {
    let bytes = match &cmd.input {
        Some(p) => std::fs::read(p).map_err(|e| Error::parse(p.display().to_string(), e.to_string()))?,
        None => Vec::new(),
    };
    let text = String::from_utf8(bytes.clone()).map_err(|_| Error::parse("input", "not UTF-8"))?;
    run_on_text(cmd, &text).map(|(result, invariants)| Report {
        verb: cmd.verb.name().to_string(),
        input_digest: digest(&bytes),
        result,
        invariants,
    })
}

/// Runs a command on in-memory input; returns the result payload and checks.
pub fn run_on_text(cmd: &Command, text: &str) -> Result<(Value, Vec<InvariantCheck>)> {
    if cmd.verb == Verb::Sweep {
        return run_sweep(cmd);
    }
    if text.trim().is_empty() {
        return Err(Error::Validation(format!("`{}` needs an input file (--in)", cmd.verb.name())));
    }
    let input = parse_text(text, cmd.format, cmd.input.as_deref())?;
    match (cmd.verb, input) {
        (Verb::Analyze, Input::Relation(r)) => Ok(analyze(&r, cmd)),
        (Verb::Analyze, Input::System(sys)) => Ok(analyze(&bubble_compose(&sys)?, cmd)),
        (Verb::Decompose, Input::Relation(r)) => run_decompose(&r),
        (Verb::Bubble, Input::System(sys)) => run_bubble(&sys),
        (Verb::Extend, Input::Relation(r)) => run_extend(&r),
        (Verb::Utility, Input::Relation(r)) => run_utility(&r),
        (Verb::Utility, Input::System(sys)) => run_utility(&bubble_compose(&sys)?),
        (Verb::Topology, Input::Relation(r)) => run_topology(&r, None),
        (Verb::Topology, Input::System(sys)) => run_topology(&bubble_compose(&sys)?, Some(&sys)),
        (verb, Input::Relation(_)) => Err(Error::Validation(format!("`{}` expects a bubble-system file", verb.name()))),
        (verb, Input::System(_)) => Err(Error::Validation(format!("`{}` expects a relation file", verb.name()))),
    }
}

fn derived_json(r: &Relation) -> Value {
    let d = r.derived_parts();
    json!({
        "symmetric_part": relation_json(&d.symmetric_part)["pairs"],
        "asymmetric_part": relation_json(&d.asymmetric_part)["pairs"],
        "comparability": relation_json(&d.comparability)["pairs"],
        "incomparability": relation_json(&d.incomparability)["pairs"],
    })
}

fn analyze(r: &Relation, cmd: &Command) -> (Value, Vec<InvariantCheck>) {
    let battery = Battery {
        mutation: cmd.mutation,
    };
    let mut checks = battery.relation_checks(r);
    if r.is_preorder() {
        checks.extend(battery.preorder_checks(r));
    }
    let result = json!({
        "relation": relation_json(r),
        "properties": r.check_properties(),
        "derived_parts": derived_json(r),
        "strict_part_negatively_transitive": r.asymmetric_part().is_negatively_transitive(),
    });
    (result, checks)
}

fn run_decompose(r: &Relation) -> Result<(Value, Vec<InvariantCheck>)> {
    match decompose(r)? {
        Decomposition::Bubbles(sys) => {
            let mut checks = necessary_conditions(r)?;
            checks.push(InvariantCheck::new(
                "composing_bubbles_recovers_relation",
                bubble_compose(&sys)? == *r,
            ));
            Ok((json!({ "fallback": null, "system": bubble_json(&sys) }), checks))
        }
        Decomposition::Fallback { witness, factor } => {
            let order: Vec<String> = factor.order.ordered_labels();
            let checks = vec![
                InvariantCheck::new("factor_order_is_linear", factor.order.relation().is_linear_order()),
                InvariantCheck::new(
                    "factor_order_covers_blocks",
                    factor.order.len() == factor.partition.len(),
                ),
            ];
            Ok((
                json!({
                    "fallback": "bourbaki",
                    "negative_transitivity_witness": witness,
                    "partition": partition_json(&factor.partition),
                    "order": order,
                }),
                checks,
            ))
        }
    }
}

fn run_bubble(sys: &BubbleSystem) -> Result<(Value, Vec<InvariantCheck>)> {
    let r = bubble_compose(sys)?;
    let round_trip = bubble_decompose(&r).is_ok_and(|back| back.same_structure(sys));
    let checks = vec![
        InvariantCheck::new("composed_relation_is_preorder", r.is_preorder()),
        InvariantCheck::new(
            "composed_strict_part_negatively_transitive",
            r.asymmetric_part().is_negatively_transitive(),
        ),
        InvariantCheck::new("decomposing_composition_recovers_system", round_trip),
    ];
    Ok((relation_json(&r), checks))
}

fn run_extend(r: &Relation) -> Result<(Value, Vec<InvariantCheck>)> {
    let l = szpilrajn_extend(r)?;
    let lin = l.relation();
    let checks = vec![
        InvariantCheck::new("extension_is_linear", lin.is_linear_order()),
        InvariantCheck::new("extension_contains_input", r.is_subset(&lin)?),
    ];
    Ok((json!({ "order": l.ordered_labels() }), checks))
}

fn run_utility(r: &Relation) -> Result<(Value, Vec<InvariantCheck>)> {
    let u = generalized_utility(r)?;
    let mut checks = utility_conditions(r, &u);
    let cont = utility_continuity(r, &u)?;
    checks.push(InvariantCheck::new("utility_continuous_on_image_grid", cont.holds));
    let result = json!({
        "utility": serde_json::to_value(&u).expect("plain data"),
        "continuous": cont.holds,
    });
    Ok((result, checks))
}

fn run_topology(r: &Relation, sys: Option<&BubbleSystem>) -> Result<(Value, Vec<InvariantCheck>)> {
    let report = topology_report(r)?;
    let decomposed;
    let sys = match sys {
        Some(s) => Some(s),
        None => {
            decomposed = bubble_decompose(r).ok();
            decomposed.as_ref()
        }
    };
    let checks = match sys {
        Some(s) => {
            let proj = projection_check(s)?;
            let mut checks = proj.checks;
            let u = system_utility(s)?;
            checks.push(InvariantCheck::new(
                "utility_continuous_on_image_grid",
                utility_continuity(r, &u)?.holds,
            ));
            checks
        }
        None => Vec::new(),
    };
    Ok((serde_json::to_value(&report).expect("plain data"), checks))
}

fn run_sweep(cmd: &Command) -> Result<(Value, Vec<InvariantCheck>)> {
    let n = cmd.n.ok_or_else(|| Error::Validation("`sweep` needs --n".into()))?;
    let battery = Battery {
        mutation: cmd.mutation,
    };
    let report = match cmd.random {
        Some(count) => random_sweep(n, count, cmd.seed, battery)?,
        None if n > MAX_EXHAUSTIVE_SWEEP => {
            return Err(Error::Validation(format!(
                "exhaustive sweep is limited to n <= {MAX_EXHAUSTIVE_SWEEP}; pass --random COUNT for a seeded randomized sweep"
            )))
        }
        None => sweep(n, battery)?,
    };
    let checks = report
        .checks
        .iter()
        .map(|c| InvariantCheck::new(&c.name, c.holds))
        .collect();
    Ok((serde_json::to_value(&report).expect("plain data"), checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn on_text(verb: Verb, text: &str) -> (Value, Vec<InvariantCheck>) {
        run_on_text(&Command::new(verb), text).unwrap()
    }

    const TWO_BUBBLES: &str = r#"{"elements":["x1","x2","y"],"pairs":[["x1","x1"],["x2","x2"],["y","y"],["x1","y"],["x2","y"]]}"#;

    #[test]
    fn analyze_two_bubble_example() {
        let (v, checks) = on_text(Verb::Analyze, TWO_BUBBLES);
        assert_eq!(v["strict_part_negatively_transitive"], true);
        assert_eq!(v["properties"]["negatively_transitive"]["holds"], false);
        assert!(checks.iter().all(|c| c.holds));
    }

    #[test]
    fn decompose_falls_back() {
        let text = r#"{"elements":["a","b","c"],"pairs":[["a","a"],["b","b"],["c","c"],["a","b"]]}"#;
        let (v, checks) = on_text(Verb::Decompose, text);
        assert_eq!(v["fallback"], "bourbaki");
        assert_eq!(v["partition"]["blocks"].as_array().unwrap().len(), 1);
        assert!(checks.iter().all(|c| c.holds));
    }

    #[test]
    fn decompose_then_bubble_round_trips() {
        let (v, _) = on_text(Verb::Decompose, TWO_BUBBLES);
        let (back, checks) = on_text(Verb::Bubble, &v["system"].to_string());
        assert!(checks.iter().all(|c| c.holds));
        let original = crate::format::parse_relation_json(TWO_BUBBLES).unwrap();
        assert_eq!(crate::format::parse_relation_json(&back.to_string()).unwrap(), original);
    }

    #[test]
    fn sweep_three() {
        let mut cmd = Command::new(Verb::Sweep);
        cmd.n = Some(3);
        let (v, checks) = run_on_text(&cmd, "").unwrap();
        assert_eq!(v["preorders"], 29);
        assert!(checks.iter().any(|c| c.name == "preorders_biject_with_pairs" && c.holds));
        cmd.n = Some(5);
        assert!(matches!(run_on_text(&cmd, ""), Err(Error::Validation(_))));
    }

    #[test]
    fn wrong_input_kind_is_rejected() {
        assert!(run_on_text(&Command::new(Verb::Bubble), TWO_BUBBLES).is_err());
    }
}

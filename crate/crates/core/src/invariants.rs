//! Named invariant checks over single relations, `(E, F)` pairs and
//! preorders, plus the exhaustive sweep used by the CLI.
//!
//! Every check is phrased as an implication or equivalence between two
//! independently computed predicates, so a failing check always points at a
//! bug in one of the predicates or constructions.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::enumerate::{all_relations, equivalences, random_relation};
use crate::error::{Error, Result};
use crate::factor::EquivalenceRelation;
use crate::relation::{Relation, SaturationMode};
use crate::structure::{bubble_compose, bubble_decompose, decompose, enumerate_preorders, join_pair, split_preorder};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub name: String,
    pub holds: bool,
}

impl InvariantCheck {
    pub fn new(name: &str, holds: bool) -> Self {
        InvariantCheck {
            name: name.to_string(),
            holds,
        }
    }
}

pub fn all_hold(checks: &[InvariantCheck]) -> bool {
    checks.iter().all(|c| c.holds)
}

/// Deliberate fault injected into the battery, used to prove that a broken
/// predicate is caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Negate every saturation test.
    Saturation,
    /// Negate every transitivity test.
    Transitivity,
}

impl std::str::FromStr for Mutation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "saturation" => Ok(Mutation::Saturation),
            "transitivity" => Ok(Mutation::Transitivity),
            other => Err(Error::Validation(format!("unknown mutation `{other}`"))),
        }
    }
}

/// Predicate access with optional fault injection.
#[derive(Debug, Clone, Copy, Default)]
pub struct Battery {
    pub mutation: Option<Mutation>,
}

fn implies(a: bool, b: bool) -> bool {
    !a || b
}

impl Battery {
    fn saturated(&self, s: &Relation, e: &Relation, mode: SaturationMode) -> bool {
        let v = s.is_saturated(e, mode).expect("same carrier");
        v != (self.mutation == Some(Mutation::Saturation))
    }

    fn transitive(&self, r: &Relation) -> bool {
        r.is_transitive() != (self.mutation == Some(Mutation::Transitivity))
    }

    /// Implications and equivalences between elementary properties and the
    /// derived relations, for an arbitrary relation.
    pub fn relation_checks(&self, r: &Relation) -> Vec<InvariantCheck> {
        let inv = r.inverse();
        let comp = r.complement();
        let i_r = r.symmetric_part();
        let p_r = r.asymmetric_part();
        let u_r = r.comparability();
        let e_r = r.incomparability();
        let (sym, asym, refl, irrefl) = (r.is_symmetric(), r.is_asymmetric(), r.is_reflexive(), r.is_irreflexive());
        let (antisym, complete) = (r.is_antisymmetric(), r.is_complete());
        let trans = self.transitive(r);
        let negtrans = r.is_negatively_transitive();
        let u = |a: &Relation, b: &Relation| a.union(b).expect("same carrier");

        let mut checks = vec![
            InvariantCheck::new(
                "symmetric_iff_inverse_symmetric_iff_complement_symmetric",
                sym == inv.is_symmetric() && sym == comp.is_symmetric(),
            ),
            InvariantCheck::new(
                "asymmetric_iff_inverse_asymmetric_iff_complement_complete",
                asym == inv.is_asymmetric() && asym == comp.is_complete(),
            ),
            InvariantCheck::new(
                "transitive_iff_inverse_transitive_iff_complement_negatively_transitive",
                trans == self.transitive(&inv) && trans == comp.is_negatively_transitive(),
            ),
            InvariantCheck::new(
                "negatively_transitive_iff_complement_transitive",
                negtrans == self.transitive(&comp),
            ),
            InvariantCheck::new(
                "reflexive_antisymmetric_negatively_transitive_implies_transitive",
                implies(refl && antisym && negtrans, trans),
            ),
            InvariantCheck::new(
                "asymmetric_negatively_transitive_implies_transitive",
                implies(asym && negtrans, trans),
            ),
            InvariantCheck::new("asymmetric_implies_irreflexive", implies(asym, irrefl)),
            InvariantCheck::new(
                "irreflexive_transitive_implies_asymmetric",
                implies(irrefl && trans, asym),
            ),
            InvariantCheck::new("complete_implies_reflexive", implies(complete, refl)),
            InvariantCheck::new(
                "transitive_complete_implies_negatively_transitive",
                implies(trans && complete, negtrans),
            ),
            InvariantCheck::new(
                "asymmetric_transitive_iff_irreflexive_transitive",
                (asym && trans) == (irrefl && trans),
            ),
            InvariantCheck::new(
                "complement_of_symmetric_part_is_comparability_of_complement",
                i_r.complement() == comp.comparability(),
            ),
            InvariantCheck::new(
                "symmetric_part_of_complement_is_incomparability",
                comp.symmetric_part() == e_r,
            ),
            InvariantCheck::new(
                "complement_of_strict_part_is_complement_plus_inverse",
                p_r.complement() == u(&comp, &inv),
            ),
            InvariantCheck::new(
                "incomparability_of_strict_part_is_incomparability_plus_symmetric_part",
                p_r.incomparability() == u(&e_r, &i_r),
            ),
            InvariantCheck::new(
                "derived_parts_symmetric_and_strict_part_asymmetric",
                i_r.is_symmetric() && u_r.is_symmetric() && e_r.is_symmetric() && p_r.is_asymmetric(),
            ),
            InvariantCheck::new(
                "transitive_implies_symmetric_and_strict_parts_transitive",
                implies(trans, self.transitive(&i_r) && self.transitive(&p_r)),
            ),
            InvariantCheck::new(
                "negatively_transitive_implies_incomparability_transitive",
                implies(negtrans, self.transitive(&e_r)),
            ),
        ];

        // An asymmetric, negatively transitive relation: incomparability is an
        // equivalence, the union with it is transitive, and the relation is
        // saturated by it.
        let holds = if asym && negtrans {
            e_r.is_equivalence() && self.transitive(&u(&e_r, r)) && self.saturated(r, &e_r, SaturationMode::Full)
        } else {
            true
        };
        checks.push(InvariantCheck::new(
            "strict_negatively_transitive_incomparability_saturates",
            holds,
        ));
        checks
    }

    /// Checks for `R = E ∪ F` where `F = X \ E`, so `E ∩ F = ∅`.
    pub fn pair_checks(&self, x: &Relation, e: &EquivalenceRelation) -> Vec<InvariantCheck> {
        let er = e.relation();
        let f = x.difference(er).expect("same carrier");
        let r = er.union(&f).expect("same carrier");
        let r_trans = self.transitive(&r);
        let f_sat_e = self.saturated(&f, er, SaturationMode::Full);
        let f_sat_r = self.saturated(&f, &r, SaturationMode::Full);
        let mut checks = vec![
            InvariantCheck::new("union_with_equivalence_reflexive", r.is_reflexive()),
            InvariantCheck::new(
                "transitive_union_implies_saturated_part",
                implies(r_trans, f_sat_e),
            ),
            InvariantCheck::new(
                "saturated_part_implies_saturated_union",
                implies(f_sat_e, self.saturated(&r, er, SaturationMode::Full)),
            ),
            InvariantCheck::new(
                "union_complete_iff_part_relatively_complete",
                r.is_complete() == f.is_e_complete(er).expect("equivalence"),
            ),
        ];
        let f_trans = self.transitive(&f);
        checks.push(InvariantCheck::new(
            "transitive_part_union_saturation_equivalences",
            implies(f_trans, f_sat_r == r_trans && r_trans == f_sat_e),
        ));
        let partitions_square = f.is_asymmetric() && f.comparability() == er.complement();
        checks.push(InvariantCheck::new(
            "three_way_partition_forces_saturation",
            implies(f_trans && partitions_square, f_sat_r && r_trans && f_sat_e),
        ));
        checks
    }

    /// Checks for a preorder `R`.
    pub fn preorder_checks(&self, r: &Relation) -> Vec<InvariantCheck> {
        let i_r = r.symmetric_part();
        let p_r = r.asymmetric_part();
        let p_inv = p_r.inverse();
        let disjoint = |a: &Relation, b: &Relation| a.is_disjoint(b).expect("same carrier");
        let complete = r.is_complete();
        let comp = r.complement();
        let f = r.inverse().complement();

        let round_trip = match split_preorder(r) {
            Ok(split) => join_pair(&split.equivalence, &split.strict).is_ok_and(|back| back == *r),
            Err(_) => false,
        };
        vec![
            InvariantCheck::new(
                "strict_part_saturated_by_preorder",
                self.saturated(&p_r, r, SaturationMode::Full),
            ),
            InvariantCheck::new(
                "strict_part_saturated_by_symmetric_part",
                self.saturated(&p_r, &i_r, SaturationMode::Full),
            ),
            InvariantCheck::new(
                "preorder_saturated_by_symmetric_part",
                self.saturated(r, &i_r, SaturationMode::Full),
            ),
            InvariantCheck::new(
                "symmetric_strict_and_inverse_strict_parts_disjoint",
                disjoint(&i_r, &p_r) && disjoint(&i_r, &p_inv) && disjoint(&p_r, &p_inv),
            ),
            InvariantCheck::new(
                "complete_iff_complement_strict_negatively_transitive",
                complete == (comp.is_asymmetric() && comp.is_negatively_transitive()),
            ),
            InvariantCheck::new(
                "complete_iff_dual_complement_recovers_parts",
                complete == (i_r == f.incomparability() && p_r == f),
            ),
            InvariantCheck::new(
                "complete_iff_strict_part_relatively_complete",
                complete == p_r.is_e_complete(&i_r).expect("symmetric part of a preorder"),
            ),
            InvariantCheck::new("split_then_join_is_identity", round_trip),
        ]
    }
}

/// Outcome of one named check across a sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepCheck {
    pub name: String,
    pub holds: bool,
    pub instances: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub relations: usize,
    pub preorders: usize,
    pub pairs: usize,
    pub negatively_transitive_preorders: usize,
    pub checks: Vec<SweepCheck>,
}

impl SweepReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

#[derive(Default)]
struct Tally {
    order: Vec<String>,
    counts: std::collections::HashMap<String, (usize, usize)>,
}

impl Tally {
    fn add(&mut self, checks: Vec<InvariantCheck>) {
        for c in checks {
            let entry = self.counts.entry(c.name.clone()).or_insert_with(|| {
                self.order.push(c.name.clone());
                (0, 0)
            });
            entry.0 += 1;
            if !c.holds {
                entry.1 += 1;
            }
        }
    }

    fn finish(self) -> Vec<SweepCheck> {
        self.order
            .into_iter()
            .map(|name| {
                let (instances, failures) = self.counts[&name];
                SweepCheck {
                    holds: failures == 0,
                    name,
                    instances,
                    failures,
                }
            })
            .collect()
    }
}

pub const MAX_EXHAUSTIVE_SWEEP: usize = 4;

/// Pair and preorder checks are run over a bounded number of relations so
/// the `n = 4` sweep stays fast.
const PAIR_SAMPLE_STRIDE_N4: usize = 97;

/// Exhaustive sweep on carriers of size `n ≤ 4`: relation checks on every
/// relation, pair checks with every equivalence, preorder checks and the
/// bubble round trip on every preorder.
pub fn sweep(n: usize, battery: Battery) -> Result<SweepReport> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > MAX_EXHAUSTIVE_SWEEP {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_EXHAUSTIVE_SWEEP,
        });
    }
    let eqs: Vec<EquivalenceRelation> = equivalences(n)?.collect();
    let mut tally = Tally::default();
    let mut relations = 0;
    let mut pairs = 0;
    for (k, r) in all_relations(n)?.enumerate() {
        relations += 1;
        tally.add(battery.relation_checks(&r));
        if n < 4 || k % PAIR_SAMPLE_STRIDE_N4 == 0 {
            for e in &eqs {
                pairs += 1;
                tally.add(battery.pair_checks(&r, e));
            }
        }
    }
    let (preorders, negtrans) = preorder_sweep(n, battery, &mut tally)?;
    Ok(SweepReport {
        n,
        relations,
        preorders,
        pairs,
        negatively_transitive_preorders: negtrans,
        checks: tally.finish(),
    })
}

fn preorder_sweep(n: usize, battery: Battery, tally: &mut Tally) -> Result<(usize, usize)> {
    let mut preorders = 0;
    let mut negtrans = 0;
    let mut pair_count = 0;
    for r in enumerate_preorders(n)? {
        preorders += 1;
        tally.add(battery.preorder_checks(&r));
        let round_trip = match decompose(&r)? {
            crate::structure::Decomposition::Bubbles(sys) => {
                negtrans += 1;
                bubble_compose(&sys).is_ok_and(|back| back == r)
            }
            crate::structure::Decomposition::Fallback { factor, .. } => factor.order.relation().is_linear_order(),
        };
        tally.add(vec![InvariantCheck::new("decompose_compose_round_trip", round_trip)]);
    }
    // Independent count of valid (E, F) pairs.
    for e in equivalences(n)? {
        for f in all_relations(n)? {
            if join_pair(&e, &f).is_ok() {
                pair_count += 1;
            }
        }
    }
    tally.add(vec![InvariantCheck::new(
        "preorders_biject_with_pairs",
        pair_count == preorders,
    )]);
    Ok((preorders, negtrans))
}

/// Randomized variant for carriers too large for the exhaustive sweep.
pub fn random_sweep(n: usize, count: usize, seed: u64, battery: Battery) -> Result<SweepReport> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tally = Tally::default();
    let mut preorders = 0;
    let mut negtrans = 0;
    for _ in 0..count {
        let density = rng.gen_range(0.1..0.9);
        let r = random_relation(&mut rng, n, density)?;
        tally.add(battery.relation_checks(&r));
        let p = r.union(&Relation::diagonal(r.carrier().clone()))?.transitive_closure();
        preorders += 1;
        tally.add(battery.preorder_checks(&p));
        if let Ok(sys) = bubble_decompose(&p) {
            negtrans += 1;
            tally.add(vec![InvariantCheck::new(
                "decompose_compose_round_trip",
                bubble_compose(&sys).is_ok_and(|back| back == p),
            )]);
        }
    }
    Ok(SweepReport {
        n,
        relations: count,
        preorders,
        pairs: 0,
        negatively_transitive_preorders: negtrans,
        checks: tally.finish(),
    })
}

//! Equivalence relations, partitions and quotient relations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::relation::{same_carrier, Carrier, Relation, SaturationMode};

/// A relation validated to be reflexive, symmetric and transitive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquivalenceRelation(Relation);

impl EquivalenceRelation {
    pub fn new(relation: Relation) -> Result<Self> {
        match relation.equivalence_violation() {
            Some(w) => Err(Error::NotAnEquivalence(relation.carrier().witness(&w))),
            None => Ok(EquivalenceRelation(relation)),
        }
    }

    pub fn diagonal(carrier: Arc<Carrier>) -> Self {
        EquivalenceRelation(Relation::diagonal(carrier))
    }

    pub fn full(carrier: Arc<Carrier>) -> Self {
        EquivalenceRelation(Relation::full(carrier))
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }

    pub fn into_relation(self) -> Relation {
        self.0
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        self.0.carrier()
    }

    pub fn classes(&self) -> Partition {
        classes(self)
    }
}

/// Disjoint nonempty blocks covering the carrier, ordered by least member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    carrier: Arc<Carrier>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl Partition {
    /// Validates disjointness and coverage, then normalises block order.
    pub fn from_index_blocks(carrier: Arc<Carrier>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = carrier.len();
        let mut block_of = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Validation("partition has an empty block".into()));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::Validation(format!("element index {x} out of range")));
                }
                if block_of[x] != usize::MAX {
                    return Err(Error::Validation(format!(
                        "element `{}` appears in two blocks",
                        carrier.label(x)
                    )));
                }
                block_of[x] = b;
            }
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::Validation(format!(
                "element `{}` is not covered by the partition",
                carrier.label(x)
            )));
        }
        // Normalise: sort members, then order blocks by least member.
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_by_key(|b| b[0]);
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                block_of[x] = b;
            }
        }
        Ok(Partition {
            carrier,
            blocks,
            block_of,
        })
    }

    pub fn from_label_blocks<S: AsRef<str>>(carrier: Arc<Carrier>, blocks: &[Vec<S>]) -> Result<Self> {
        let idx = blocks
            .iter()
            .map(|b| b.iter().map(|l| carrier.index_of(l.as_ref())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Partition::from_index_blocks(carrier, idx)
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The canonical map `x ↦ C_x`, as block indices.
    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn canonical_map(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block_label(b: usize) -> String {
        format!("B{b}")
    }

    /// Carrier of block labels `B0, B1, ...`.
    pub fn block_carrier(&self) -> Arc<Carrier> {
        Carrier::new((0..self.blocks.len()).map(Partition::block_label)).expect("distinct labels")
    }

    pub fn label_blocks(&self) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&x| self.carrier.label(x).to_string()).collect())
            .collect()
    }

    /// The equivalence associated with the partition.
    pub fn equivalence(&self) -> EquivalenceRelation {
        EquivalenceRelation(Relation::from_fn(self.carrier.clone(), |x, y| {
            self.block_of[x] == self.block_of[y]
        }))
    }

    /// For a finer partition, maps each of its blocks to the containing block of `coarser`.
    pub fn refinement_map(&self, coarser: &Partition) -> Option<Vec<usize>> {
        if !same_carrier(&self.carrier, &coarser.carrier) {
            return None;
        }
        self.blocks
            .iter()
            .map(|block| {
                let target = coarser.block_of[block[0]];
                block
                    .iter()
                    .all(|&x| coarser.block_of[x] == target)
                    .then_some(target)
            })
            .collect()
    }

    pub fn refines(&self, coarser: &Partition) -> bool {
        self.refinement_map(coarser).is_some()
    }
}

/// A relation on the blocks of a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientRelation {
    pub partition: Partition,
    pub relation: Relation,
}

/// Equivalence classes, blocks ordered by least member.
pub fn classes(e: &EquivalenceRelation) -> Partition {
    let r = e.relation();
    let n = r.len();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if block_of[x] != usize::MAX {
            continue;
        }
        let b = blocks.len();
        let members: Vec<usize> = r.successors(x).collect();
        for &y in &members {
            block_of[y] = b;
        }
        blocks.push(members);
    }
    Partition {
        carrier: r.carrier().clone(),
        blocks,
        block_of,
    }
}

/// The factor-relation `R/E` of an `E`-saturated relation.
pub fn factor_relation(r: &Relation, e: &EquivalenceRelation) -> Result<QuotientRelation> {
    if let Some(w) = r.saturation_violation(e.relation(), SaturationMode::Full)? {
        return Err(Error::NotSaturated(r.carrier().witness(&w)));
    }
    let partition = classes(e);
    let reps: Vec<usize> = partition.blocks.iter().map(|b| b[0]).collect();
    let relation = Relation::from_fn(partition.block_carrier(), |a, b| r.contains(reps[a], reps[b]));
    Ok(QuotientRelation { partition, relation })
}

/// The weak factor-relation: `B₁ R′ B₂` iff every `x′ ∈ B₁` has some `y′ ∈ B₂` with `x′Ry′`.
pub fn weak_factor_relation(r: &Relation, e: &EquivalenceRelation) -> Result<QuotientRelation> {
    if !same_carrier(r.carrier(), e.carrier()) {
        return Err(Error::CarrierMismatch);
    }
    let partition = classes(e);
    let blocks = &partition.blocks;
    let relation = Relation::from_fn(partition.block_carrier(), |a, b| {
        blocks[a]
            .iter()
            .all(|&x| blocks[b].iter().any(|&y| r.contains(x, y)))
    });
    Ok(QuotientRelation { partition, relation })
}

/// Connected components of an indifference (reflexive symmetric relation).
pub fn indifference_curves(s: &Relation) -> Result<Partition> {
    if let Some(w) = s.reflexive_violation().or_else(|| s.symmetric_violation()) {
        return Err(Error::NotAnIndifference(s.carrier().witness(&w)));
    }
    let closure = EquivalenceRelation::new(s.transitive_closure())
        .map_err(|e| Error::invariant("closure_of_indifference_is_equivalence", e.to_string()))?;
    Ok(classes(&closure))
}

/// `(x, x′) ~ (y, y′)` iff `xEy` and `x′E′y′`, on `A × A′` in lexicographic order.
pub fn product_equivalence(e: &EquivalenceRelation, e2: &EquivalenceRelation) -> EquivalenceRelation {
    let (a, b) = (e.carrier(), e2.carrier());
    let m = b.len();
    let carrier = Carrier::new(
        a.labels()
            .iter()
            .flat_map(|x| b.labels().iter().map(move |y| format!("({x},{y})"))),
    )
    .expect("product labels are distinct");
    let (r1, r2) = (e.relation(), e2.relation());
    EquivalenceRelation(Relation::from_fn(carrier, |p, q| {
        r1.contains(p / m, q / m) && r2.contains(p % m, q % m)
    }))
}

/// Result of factoring a map through the canonical surjection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// `f′` on block indices, into the target carrier.
    pub map: Vec<usize>,
    /// `f′` is increasing from the weak factor-relation to the target relation.
    pub increasing: bool,
    pub surjective: bool,
    /// `E` equals the kernel `{(x, y) : f(x) = f(y)}`.
    pub kernel_matches: bool,
    pub bijective: bool,
}

/// Factors `f: A → B` (given as target indices) through `c: A → A/E`.
///
/// `f` must be constant on classes and increasing from `r` to `s`.
pub fn factor_through(
    f: &[usize],
    e: &EquivalenceRelation,
    r: &Relation,
    s: &Relation,
) -> Result<Factorization> {
    if !same_carrier(e.carrier(), r.carrier()) {
        return Err(Error::CarrierMismatch);
    }
    let n = r.len();
    if f.len() != n || f.iter().any(|&y| y >= s.len()) {
        return Err(Error::Validation("map must send every element into the target carrier".into()));
    }
    let er = e.relation();
    for x in 0..n {
        for y in er.successors(x) {
            if f[x] != f[y] {
                return Err(Error::NotConstantOnClasses(r.carrier().witness(&[x, y])));
            }
        }
    }
    if let Some((x, y)) = r.pairs().find(|&(x, y)| !s.contains(f[x], f[y])) {
        return Err(Error::NotIncreasing(r.carrier().witness(&[x, y])));
    }
    let quotient = weak_factor_relation(r, e)?;
    let partition = &quotient.partition;
    let map: Vec<usize> = partition.blocks().iter().map(|b| f[b[0]]).collect();
    let increasing = quotient.relation.pairs().all(|(a, b)| s.contains(map[a], map[b]));
    let mut hit = vec![false; s.len()];
    for &y in &map {
        hit[y] = true;
    }
    let surjective = hit.iter().all(|&h| h);
    let kernel_matches = (0..n).all(|x| (0..n).all(|y| er.contains(x, y) == (f[x] == f[y])));
    let mut sorted = map.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let injective = sorted.len() == map.len();
    Ok(Factorization {
        map,
        increasing,
        surjective,
        kernel_matches,
        bijective: surjective && injective,
    })
}

//! Preorders as `(E, F)` pairs, bubble decomposition and the inverse
//! bubbling construction.
//!
//! A preorder whose asymmetric part `F` is negatively transitive splits into
//! "bubbles": the classes of the incomparability equivalence `𝓔 = E_F`. The
//! weak factor-relation on those classes is a linear order, and the original
//! preorder is recovered as "strictly lower bubble, or same bubble and
//! inner-equivalent". [`bubble_decompose`] and [`bubble_compose`] are the two
//! directions; both re-check the structural conclusions at runtime and fail
//! with [`Error::InvariantViolated`] if any of them does not hold.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::factor::{classes, factor_relation, weak_factor_relation, EquivalenceRelation, Partition};
use crate::invariants::InvariantCheck;
use crate::relation::{same_carrier, Carrier, Relation, SaturationMode};

/// A linearly ordered finite set, stored as a rank per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loset {
    carrier: Arc<Carrier>,
    rank: Vec<usize>,
}

impl Loset {
    /// `order[k]` is the element of rank `k`.
    pub fn from_order(carrier: Arc<Carrier>, order: &[usize]) -> Result<Self> {
        let n = carrier.len();
        let mut rank = vec![usize::MAX; n];
        if order.len() != n {
            return Err(Error::Validation("order must list every element once".into()));
        }
        for (k, &x) in order.iter().enumerate() {
            if x >= n || rank[x] != usize::MAX {
                return Err(Error::Validation("order must list every element once".into()));
            }
            rank[x] = k;
        }
        Ok(Loset { carrier, rank })
    }

    /// Loset whose order is the listing order of the carrier.
    pub fn chain(carrier: Arc<Carrier>) -> Self {
        let rank = (0..carrier.len()).collect();
        Loset { carrier, rank }
    }

    pub fn from_relation(r: &Relation) -> Result<Self> {
        if let Some(w) = r.partial_order_violation().or_else(|| r.complete_violation()) {
            return Err(Error::NotALinearOrder(r.carrier().witness(&w)));
        }
        let n = r.len();
        // rank = number of elements strictly below
        let rank = (0..n)
            .map(|y| (0..n).filter(|&x| x != y && r.contains(x, y)).count())
            .collect();
        Ok(Loset {
            carrier: r.carrier().clone(),
            rank,
        })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Elements listed from least to greatest.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.rank.len()];
        for (x, &k) in self.rank.iter().enumerate() {
            order[k] = x;
        }
        order
    }

    pub fn least(&self) -> usize {
        self.order()[0]
    }

    pub fn greatest(&self) -> usize {
        *self.order().last().expect("nonempty")
    }

    /// `D ∪ {(x, y) : rank(x) < rank(y)}`
    pub fn relation(&self) -> Relation {
        Relation::from_fn(self.carrier.clone(), |x, y| self.rank[x] <= self.rank[y])
    }

    pub fn strict(&self) -> Relation {
        Relation::from_fn(self.carrier.clone(), |x, y| self.rank[x] < self.rank[y])
    }

    pub fn ordered_labels(&self) -> Vec<String> {
        self.order()
            .into_iter()
            .map(|x| self.carrier.label(x).to_string())
            .collect()
    }
}

/// A preorder seen as its symmetric part `E` and asymmetric part `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreorderSplit {
    pub equivalence: EquivalenceRelation,
    pub strict: Relation,
}

fn not_a_preorder(r: &Relation) -> Option<Error> {
    r.preorder_violation()
        .map(|w| Error::NotAPreorder(r.carrier().witness(&w)))
}

/// `R ↦ (I_R, P_R)`, with the pair's defining properties re-verified.
pub fn split_preorder(r: &Relation) -> Result<PreorderSplit> {
    if let Some(e) = not_a_preorder(r) {
        return Err(e);
    }
    let e = r.symmetric_part();
    let f = r.asymmetric_part();
    let equivalence = EquivalenceRelation::new(e)
        .map_err(|err| Error::invariant("symmetric_part_is_equivalence", err.to_string()))?;
    let checks = [
        ("split_parts_disjoint", equivalence.relation().is_disjoint(&f)?),
        ("strict_part_asymmetric", f.is_asymmetric()),
        ("strict_part_transitive", f.is_transitive()),
        ("strict_part_saturated", f.is_saturated(equivalence.relation(), SaturationMode::Full)?),
        ("split_parts_cover", equivalence.relation().union(&f)? == *r),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(Error::invariant(name, format!("{r:?}")));
    }
    Ok(PreorderSplit {
        equivalence,
        strict: f,
    })
}

/// `(E, F) ↦ E ∪ F` for an equivalence `E` and an asymmetric, transitive,
/// `E`-saturated `F` disjoint from `E`.
pub fn join_pair(e: &EquivalenceRelation, f: &Relation) -> Result<Relation> {
    let er = e.relation();
    if !same_carrier(er.carrier(), f.carrier()) {
        return Err(Error::CarrierMismatch);
    }
    let c = f.carrier();
    let invalid = |reason: &str, w: Vec<usize>| Error::PairInvalid {
        reason: reason.to_string(),
        witness: c.witness(&w),
    };
    if let Some(w) = f.asymmetric_violation() {
        return Err(invalid("F is not asymmetric", w));
    }
    if let Some(w) = f.transitive_violation() {
        return Err(invalid("F is not transitive", w));
    }
    if let Some((x, y)) = f.pairs().find(|&(x, y)| er.contains(x, y)) {
        return Err(invalid("E and F intersect", vec![x, y]));
    }
    if let Some(w) = f.saturation_violation(er, SaturationMode::Full)? {
        return Err(invalid("F is not E-saturated", w));
    }
    let r = er.union(f)?;
    if !r.is_preorder() || r.symmetric_part() != *er || r.asymmetric_part() != *f {
        return Err(Error::invariant("joined_pair_splits_back", format!("{r:?}")));
    }
    Ok(r)
}

/// A set with an equivalence relation, as a member of a bubble system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bubble {
    pub label: String,
    /// Member indices into the system carrier, ascending.
    pub members: Vec<usize>,
    /// Equivalence on a carrier listing the members' labels in `members` order.
    pub inner: EquivalenceRelation,
}

/// A family of disjoint bubbles indexed by a linearly ordered set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BubbleSystem {
    carrier: Arc<Carrier>,
    index: Loset,
    /// Bubbles in index order; `bubbles[k]` carries the index label of rank `k`.
    bubbles: Vec<Bubble>,
    /// Element ↦ rank of its bubble in the index.
    projection: Vec<usize>,
}

/// Bubble description by labels, used for construction from files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BubbleSpec {
    pub label: String,
    pub elements: Vec<String>,
    pub inner_pairs: Vec<(String, String)>,
}

impl BubbleSystem {
    /// Builds a system from bubbles listed in index order.
    ///
    /// `carrier` fixes the element order of the composed relation; when
    /// `None`, bubble members are concatenated in index order.
    pub fn from_specs(carrier: Option<Arc<Carrier>>, specs: &[BubbleSpec]) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::InvalidSystem("index set is empty".into()));
        }
        let carrier = match carrier {
            Some(c) => c,
            None => Carrier::new(specs.iter().flat_map(|s| s.elements.iter().cloned()))
                .map_err(|e| Error::InvalidSystem(e.to_string()))?,
        };
        let index_carrier = Carrier::new(specs.iter().map(|s| s.label.clone()))
            .map_err(|e| Error::InvalidSystem(format!("index labels: {e}")))?;
        let index = Loset::chain(index_carrier);
        let mut projection = vec![usize::MAX; carrier.len()];
        let mut bubbles = Vec::with_capacity(specs.len());
        for (k, spec) in specs.iter().enumerate() {
            if spec.elements.is_empty() {
                return Err(Error::InvalidSystem(format!("bubble `{}` is empty", spec.label)));
            }
            let mut members = Vec::with_capacity(spec.elements.len());
            for l in &spec.elements {
                let x = carrier.index_of(l).map_err(|e| Error::InvalidSystem(e.to_string()))?;
                if projection[x] != usize::MAX {
                    return Err(Error::InvalidSystem(format!("element `{l}` lies in two bubbles")));
                }
                projection[x] = k;
                members.push(x);
            }
            members.sort_unstable();
            let inner_carrier = Carrier::new(members.iter().map(|&x| carrier.label(x).to_string()))?;
            let inner_rel = Relation::from_pairs(inner_carrier, &spec.inner_pairs).map_err(|e| {
                Error::Validation(format!("bubble `{}`: {e}", spec.label))
            })?;
            let inner = EquivalenceRelation::new(inner_rel)
                .map_err(|e| Error::Validation(format!("bubble `{}`: {e}", spec.label)))?;
            bubbles.push(Bubble {
                label: spec.label.clone(),
                members,
                inner,
            });
        }
        if let Some(x) = projection.iter().position(|&k| k == usize::MAX) {
            return Err(Error::InvalidSystem(format!(
                "element `{}` lies in no bubble",
                carrier.label(x)
            )));
        }
        Ok(BubbleSystem {
            carrier,
            index,
            bubbles,
            projection,
        })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn index(&self) -> &Loset {
        &self.index
    }

    pub fn bubbles(&self) -> &[Bubble] {
        &self.bubbles
    }

    /// Rank of the bubble containing each element.
    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    /// Projection onto the index carrier (index element, not rank).
    pub fn projection_to_index(&self) -> Vec<usize> {
        let order = self.index.order();
        self.projection.iter().map(|&k| order[k]).collect()
    }

    /// The equivalence `𝓔` of "same bubble".
    pub fn bubble_equivalence(&self) -> EquivalenceRelation {
        EquivalenceRelation::new(Relation::from_fn(self.carrier.clone(), |x, y| {
            self.projection[x] == self.projection[y]
        }))
        .expect("same-bubble relation is an equivalence")
    }

    pub fn partition(&self) -> Partition {
        Partition::from_index_blocks(
            self.carrier.clone(),
            self.bubbles.iter().map(|b| b.members.clone()).collect(),
        )
        .expect("bubbles partition the carrier")
    }

    /// Relation `xEy` on the whole carrier: same bubble and inner-equivalent.
    pub fn inner_equivalence(&self) -> Relation {
        let mut pos = vec![0; self.carrier.len()];
        for b in &self.bubbles {
            for (i, &x) in b.members.iter().enumerate() {
                pos[x] = i;
            }
        }
        Relation::from_fn(self.carrier.clone(), |x, y| {
            let (kx, ky) = (self.projection[x], self.projection[y]);
            kx == ky && self.bubbles[kx].inner.relation().contains(pos[x], pos[y])
        })
    }

    pub fn specs(&self) -> Vec<BubbleSpec> {
        self.bubbles
            .iter()
            .map(|b| BubbleSpec {
                label: b.label.clone(),
                elements: b.members.iter().map(|&x| self.carrier.label(x).to_string()).collect(),
                inner_pairs: b.inner.relation().label_pairs(),
            })
            .collect()
    }

    /// Equality up to the choice of bubble labels: same element sets in the
    /// same index order with the same inner equivalences.
    pub fn same_structure(&self, other: &BubbleSystem) -> bool {
        type Shape = Vec<(BTreeSet<String>, BTreeSet<(String, String)>)>;
        fn shape(s: &BubbleSystem) -> Shape {
            s.specs()
                .into_iter()
                .map(|b| {
                    (
                        b.elements.into_iter().collect(),
                        b.inner_pairs.into_iter().collect(),
                    )
                })
                .collect()
        }
        shape(self) == shape(other)
    }
}

/// A preordered summand of a coproduct.
#[derive(Debug, Clone)]
pub struct Summand {
    /// Members (indices into the coproduct carrier), matching the preorder's carrier order.
    pub members: Vec<usize>,
    pub preorder: Relation,
}

/// Preorder on a disjoint union of preordered sets over a partially ordered
/// index: `xRy` iff `π(x) < π(y)`, or `π(x) = π(y)` and `x R_π(x) y`.
///
/// `summands[i]` sits at element `i` of `index_order`'s carrier. Returns the
/// relation and the projection onto index elements.
pub fn coproduct(
    carrier: Arc<Carrier>,
    index_order: &Relation,
    summands: &[Summand],
) -> Result<(Relation, Vec<usize>)> {
    if let Some(w) = index_order.partial_order_violation() {
        return Err(Error::NotAPartialOrder(index_order.carrier().witness(&w)));
    }
    if summands.len() != index_order.len() {
        return Err(Error::InvalidSystem("one summand per index element is required".into()));
    }
    let n = carrier.len();
    let mut proj = vec![usize::MAX; n];
    let mut pos = vec![0; n];
    for (i, s) in summands.iter().enumerate() {
        if s.members.is_empty() {
            return Err(Error::InvalidSystem(format!("summand {i} is empty")));
        }
        if s.preorder.len() != s.members.len() {
            return Err(Error::InvalidSystem(format!("summand {i}: preorder size mismatch")));
        }
        if let Some(e) = not_a_preorder(&s.preorder) {
            return Err(e);
        }
        for (p, &x) in s.members.iter().enumerate() {
            if x >= n || proj[x] != usize::MAX {
                return Err(Error::InvalidSystem("summands must be disjoint".into()));
            }
            proj[x] = i;
            pos[x] = p;
        }
    }
    if proj.contains(&usize::MAX) {
        return Err(Error::InvalidSystem("summands must cover the carrier".into()));
    }
    let r = Relation::from_fn(carrier, |x, y| {
        let (i, j) = (proj[x], proj[y]);
        if i == j {
            summands[i].preorder.contains(pos[x], pos[y])
        } else {
            index_order.contains(i, j)
        }
    });
    Ok((r, proj))
}

/// Composes the preorder of a bubble system and verifies that its strict
/// part is negatively transitive with incomparability classes equal to the
/// bubbles, and that `xFy ⇔ π(x) < π(y)`.
pub fn bubble_compose(sys: &BubbleSystem) -> Result<Relation> {
    let index_rel = sys.index.relation();
    let order = sys.index.order();
    let mut by_index: Vec<Option<Summand>> = vec![None; sys.bubbles.len()];
    for (k, b) in sys.bubbles.iter().enumerate() {
        by_index[order[k]] = Some(Summand {
            members: b.members.clone(),
            preorder: b.inner.relation().clone(),
        });
    }
    let summands: Vec<Summand> = by_index.into_iter().map(|s| s.expect("one per rank")).collect();
    let (r, _) = coproduct(sys.carrier.clone(), &index_rel, &summands)?;

    let f = r.asymmetric_part();
    let proj = &sys.projection;
    let checks = [
        InvariantCheck::new("composed_strict_part_negatively_transitive", f.is_negatively_transitive()),
        InvariantCheck::new(
            "composed_incomparability_is_bubble_equivalence",
            f.incomparability() == *sys.bubble_equivalence().relation(),
        ),
        InvariantCheck::new(
            "composed_strict_part_is_index_order",
            f.pairs().count() == r.pairs().filter(|&(x, y)| proj[x] < proj[y]).count()
                && f.pairs().all(|(x, y)| proj[x] < proj[y]),
        ),
    ];
    if let Some(c) = checks.iter().find(|c| !c.holds) {
        return Err(Error::invariant(&c.name, format!("{r:?}")));
    }
    Ok(r)
}

/// Checks every structural conclusion for a preorder whose strict part is
/// negatively transitive. The preconditions are the caller's responsibility.
pub fn necessary_conditions(r: &Relation) -> Result<Vec<InvariantCheck>> {
    let e = r.symmetric_part();
    let f = r.asymmetric_part();
    let er = r.incomparability();
    let cal_e = f.incomparability();
    let mut checks = vec![InvariantCheck::new(
        "incomparability_symmetric_and_bubble_relation_equivalence",
        er.is_symmetric() && cal_e.is_equivalence(),
    )];
    checks.push(InvariantCheck::new(
        "bubble_relation_is_indifference_plus_incomparability",
        cal_e == e.union(&er)?,
    ));
    let Ok(cal_eq) = EquivalenceRelation::new(cal_e.clone()) else {
        return Ok(checks);
    };
    checks.push(InvariantCheck::new(
        "strict_part_bubble_saturated",
        f.is_saturated(&cal_e, SaturationMode::Full)?,
    ));
    checks.push(InvariantCheck::new(
        "indifference_weakly_bubble_saturated",
        e.is_saturated(&cal_e, SaturationMode::Weak)?,
    ));
    checks.push(InvariantCheck::new(
        "preorder_weakly_bubble_saturated",
        r.is_saturated(&cal_e, SaturationMode::Weak)?,
    ));
    let weak = weak_factor_relation(r, &cal_eq)?.relation;
    let (diag_plus_strict, disjoint, strict_bar) = match factor_relation(&f, &cal_eq) {
        Ok(q) => {
            let d = Relation::diagonal(q.relation.carrier().clone());
            let fbar = q.relation.rehome(weak.carrier().clone())?;
            let d = d.rehome(weak.carrier().clone())?;
            (weak == d.union(&fbar)?, d.is_disjoint(&fbar)?, Some(fbar))
        }
        Err(_) => (false, false, None),
    };
    checks.push(InvariantCheck::new(
        "factor_order_is_diagonal_plus_strict_factor",
        diag_plus_strict && disjoint,
    ));
    checks.push(InvariantCheck::new(
        "factor_order_linear_with_strict_factor",
        weak.is_linear_order() && strict_bar.is_some_and(|fb| weak.asymmetric_part() == fb),
    ));
    Ok(checks)
}

/// Splits a preorder with negatively transitive strict part into bubbles
/// over its linearly ordered factor-set.
///
/// Index labels are the block labels `B0, B1, ...` (ordered by least
/// member); bubbles are listed in index order.
pub fn bubble_decompose(r: &Relation) -> Result<BubbleSystem> {
    if let Some(e) = not_a_preorder(r) {
        return Err(e);
    }
    let f = r.asymmetric_part();
    if let Some(w) = f.negative_transitive_violation() {
        return Err(Error::NotNegativelyTransitive(r.carrier().witness(&w)));
    }
    let checks = necessary_conditions(r)?;
    if let Some(c) = checks.iter().find(|c| !c.holds) {
        return Err(Error::invariant(&c.name, format!("{r:?}")));
    }
    let cal_e = EquivalenceRelation::new(f.incomparability())
        .map_err(|e| Error::invariant("bubble_relation_is_equivalence", e.to_string()))?;
    let quotient = weak_factor_relation(r, &cal_e)?;
    let index = Loset::from_relation(&quotient.relation)
        .map_err(|e| Error::invariant("factor_order_linear", e.to_string()))?;
    let partition = quotient.partition;
    let e = r.symmetric_part();
    let order = index.order();
    let mut projection = vec![0; r.len()];
    let mut bubbles = Vec::with_capacity(order.len());
    for (k, &b) in order.iter().enumerate() {
        let members = partition.blocks()[b].clone();
        for &x in &members {
            projection[x] = k;
        }
        let inner = EquivalenceRelation::new(e.restrict(&members)?)
            .map_err(|err| Error::invariant("inner_relation_is_equivalence", err.to_string()))?;
        bubbles.push(Bubble {
            label: Partition::block_label(b),
            members,
            inner,
        });
    }
    Ok(BubbleSystem {
        carrier: r.carrier().clone(),
        index,
        bubbles,
        projection,
    })
}

/// Linear factor of an arbitrary preorder by the transitive closure of the
/// incomparability of its strict part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFactor {
    pub partition: Partition,
    pub order: Loset,
}

pub fn bourbaki_factor(r: &Relation) -> Result<LinearFactor> {
    if let Some(e) = not_a_preorder(r) {
        return Err(e);
    }
    let indifference = r.asymmetric_part().incomparability();
    let closure = EquivalenceRelation::new(indifference.transitive_closure())
        .map_err(|e| Error::invariant("closure_of_indifference_is_equivalence", e.to_string()))?;
    if !r.is_saturated(closure.relation(), SaturationMode::Weak)? {
        return Err(Error::invariant("preorder_weakly_saturated_by_closure", format!("{r:?}")));
    }
    let quotient = weak_factor_relation(r, &closure)?;
    let order = Loset::from_relation(&quotient.relation)
        .map_err(|e| Error::invariant("weak_factor_is_linear", e.to_string()))?;
    Ok(LinearFactor {
        partition: quotient.partition,
        order,
    })
}

/// Outcome of decomposing an arbitrary preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Bubbles(BubbleSystem),
    /// Strict part not negatively transitive; `witness` is the violating triple.
    Fallback {
        witness: crate::error::Witness,
        factor: LinearFactor,
    },
}

/// [`bubble_decompose`], falling back to [`bourbaki_factor`] when the strict
/// part is not negatively transitive.
pub fn decompose(r: &Relation) -> Result<Decomposition> {
    match bubble_decompose(r) {
        Ok(sys) => Ok(Decomposition::Bubbles(sys)),
        Err(Error::NotNegativelyTransitive(witness)) => Ok(Decomposition::Fallback {
            witness,
            factor: bourbaki_factor(r)?,
        }),
        Err(e) => Err(e),
    }
}

pub const MAX_PREORDER_ENUMERATION: usize = 4;

/// Every preorder on `e0..e{n-1}`, in lexicographic order of the row-major
/// matrix string.
pub fn enumerate_preorders(n: usize) -> Result<impl Iterator<Item = Relation>> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > MAX_PREORDER_ENUMERATION {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_PREORDER_ENUMERATION,
        });
    }
    let carrier = Carrier::canonical(n)?;
    let cells = n * n;
    let diag: u64 = (0..n).map(|i| 1u64 << (cells - 1 - (i * n + i))).sum();
    Ok((0..1u64 << cells)
        .filter(move |v| v & diag == diag)
        .map(move |v| {
            Relation::from_fn(carrier.clone(), |i, j| v >> (cells - 1 - (i * n + j)) & 1 == 1)
        })
        .filter(|r| r.is_transitive()))
}

/// Classes of `E_F` for the strict part, as a partition (convenience for reports).
pub fn bubble_partition(r: &Relation) -> Result<Partition> {
    let cal_e = EquivalenceRelation::new(r.asymmetric_part().incomparability())?;
    Ok(classes(&cal_e))
}

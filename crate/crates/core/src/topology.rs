//! Interval topologies on finite preordered sets.
//!
//! Subsets of a carrier of at most 16 elements are `u32` masks (bit `i` is
//! element `i`). Opens are listed by size, then lexicographically by their
//! sorted element indices.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::invariants::InvariantCheck;
use crate::order_ext::{Rational, UtilityAssignment};
use crate::relation::{Carrier, Relation};
use crate::structure::{bubble_compose, BubbleSystem, Loset};

pub const MAX_TOPOLOGY_SIZE: usize = 16;
pub const MAX_COMPLETENESS_SIZE: usize = 12;
pub const MAX_PROJECTION_SIZE: usize = MAX_TOPOLOGY_SIZE;

pub type Mask = u32;

pub fn mask_elements(m: Mask) -> Vec<usize> {
    (0..32).filter(|&i| m >> i & 1 == 1).collect()
}

fn mask_of(elements: impl IntoIterator<Item = usize>) -> Mask {
    elements.into_iter().fold(0, |m, i| m | 1 << i)
}

fn full_mask(n: usize) -> Mask {
    if n == 32 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

fn sort_masks(masks: &mut [Mask]) {
    masks.sort_by_cached_key(|&m| (m.count_ones(), mask_elements(m)));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalShape {
    /// `(x, y) = {z : xFz ∧ zFy}`
    Bounded,
    /// `(←, x) = {z : zFx}`
    LeftRay,
    /// `(x, →) = {z : xFz}`
    RightRay,
}

/// An open interval of a preordered set with its realised extent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub shape: IntervalShape,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    /// Sorted element indices.
    pub extent: Vec<usize>,
}

impl Interval {
    pub fn is_empty(&self) -> bool {
        self.extent.is_empty()
    }

    /// Recomputes the extent from the endpoints against a strict relation.
    pub fn recompute(&self, strict: &Relation) -> Vec<usize> {
        let n = strict.len();
        (0..n)
            .filter(|&z| match (self.shape, self.lower, self.upper) {
                (IntervalShape::Bounded, Some(x), Some(y)) => strict.contains(x, z) && strict.contains(z, y),
                (IntervalShape::LeftRay, _, Some(x)) => strict.contains(z, x),
                (IntervalShape::RightRay, Some(x), _) => strict.contains(x, z),
                _ => false,
            })
            .collect()
    }

    pub fn describe(&self, carrier: &Carrier) -> String {
        let l = |i: Option<usize>| i.map(|i| carrier.label(i).to_string()).unwrap_or_default();
        match self.shape {
            IntervalShape::Bounded => format!("({}, {})", l(self.lower), l(self.upper)),
            IntervalShape::LeftRay => format!("(<-, {})", l(self.upper)),
            IntervalShape::RightRay => format!("({}, ->)", l(self.lower)),
        }
    }
}

fn require_preorder(r: &Relation) -> Result<()> {
    match r.preorder_violation() {
        Some(w) => Err(Error::NotAPreorder(r.carrier().witness(&w))),
        None => Ok(()),
    }
}

/// All open intervals of a preorder, using its strict part: bounded
/// intervals `(x, y)` for every `xFy` in lexicographic order, then for each
/// element its left and right ray. Empty intervals are kept.
pub fn open_intervals(r: &Relation) -> Result<Vec<Interval>> {
    require_preorder(r)?;
    let f = r.asymmetric_part();
    let mut out = Vec::new();
    for (x, y) in f.pairs() {
        let iv = Interval {
            shape: IntervalShape::Bounded,
            lower: Some(x),
            upper: Some(y),
            extent: vec![],
        };
        out.push(iv);
    }
    for x in 0..r.len() {
        out.push(Interval {
            shape: IntervalShape::LeftRay,
            lower: None,
            upper: Some(x),
            extent: vec![],
        });
        out.push(Interval {
            shape: IntervalShape::RightRay,
            lower: Some(x),
            upper: None,
            extent: vec![],
        });
    }
    for iv in &mut out {
        iv.extent = iv.recompute(&f);
    }
    Ok(out)
}

/// A topology on a carrier of at most 16 elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    carrier: Arc<Carrier>,
    opens: Vec<Mask>,
    open_set: HashSet<Mask>,
    subbase: Vec<Interval>,
}

impl FiniteTopology {
    /// Validates that `opens` contains `∅` and the carrier and is closed under
    /// pairwise unions and intersections.
    pub fn from_opens(carrier: Arc<Carrier>, opens: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let n = carrier.len();
        if n > MAX_TOPOLOGY_SIZE {
            return Err(Error::TooLarge {
                size: n,
                limit: MAX_TOPOLOGY_SIZE,
            });
        }
        let full = full_mask(n);
        let open_set: HashSet<Mask> = opens.into_iter().collect();
        if open_set.iter().any(|&m| m & !full != 0) {
            return Err(Error::Validation("open set outside the carrier".into()));
        }
        if !open_set.contains(&0) || !open_set.contains(&full) {
            return Err(Error::Validation("topology must contain the empty set and the carrier".into()));
        }
        for &a in &open_set {
            for &b in &open_set {
                if !open_set.contains(&(a | b)) || !open_set.contains(&(a & b)) {
                    return Err(Error::Validation("family is not closed under unions and intersections".into()));
                }
            }
        }
        let mut opens: Vec<Mask> = open_set.iter().copied().collect();
        sort_masks(&mut opens);
        Ok(FiniteTopology {
            carrier,
            opens,
            open_set,
            subbase: vec![],
        })
    }

    pub fn discrete(carrier: Arc<Carrier>) -> Result<Self> {
        let n = carrier.len();
        if n > MAX_TOPOLOGY_SIZE {
            return Err(Error::TooLarge {
                size: n,
                limit: MAX_TOPOLOGY_SIZE,
            });
        }
        FiniteTopology::from_opens(carrier, 0..=full_mask(n))
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    /// Opens sorted by size, then lexicographically.
    pub fn opens(&self) -> &[Mask] {
        &self.opens
    }

    pub fn subbase(&self) -> &[Interval] {
        &self.subbase
    }

    pub fn is_open(&self, m: Mask) -> bool {
        self.open_set.contains(&m)
    }

    pub fn full(&self) -> Mask {
        full_mask(self.carrier.len())
    }

    pub fn labels(&self, m: Mask) -> Vec<String> {
        mask_elements(m)
            .into_iter()
            .map(|i| self.carrier.label(i).to_string())
            .collect()
    }

    pub fn labelled_opens(&self) -> Vec<Vec<String>> {
        self.opens.iter().map(|&m| self.labels(m)).collect()
    }

    /// `D` meets every nonempty open set.
    pub fn is_dense(&self, d: Mask) -> bool {
        self.opens.iter().all(|&u| u == 0 || u & d != 0)
    }
}

/// Topology generated by the extents of `subbase`: unions of finite
/// intersections, the empty intersection being the carrier.
pub fn generate_topology(carrier: Arc<Carrier>, subbase: &[Interval]) -> Result<FiniteTopology> {
    let n = carrier.len();
    if n > MAX_TOPOLOGY_SIZE {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_TOPOLOGY_SIZE,
        });
    }
    let full = full_mask(n);
    let extents: BTreeSet<Mask> = subbase.iter().map(|iv| mask_of(iv.extent.iter().copied())).collect();
    let mut base: HashSet<Mask> = HashSet::from([full]);
    for &s in &extents {
        let new: Vec<Mask> = base.iter().map(|&b| b & s).collect();
        base.extend(new);
    }
    let base: Vec<Mask> = base.into_iter().collect();
    // Unions of base members form a topology, so no closure check is needed.
    let mut opens: Vec<Mask> = (0..=full)
        .filter(|&u| base.iter().filter(|&&b| b & !u == 0).fold(0, |acc, &b| acc | b) == u)
        .collect();
    let open_set = opens.iter().copied().collect();
    sort_masks(&mut opens);
    Ok(FiniteTopology {
        carrier,
        opens,
        open_set,
        subbase: subbase.to_vec(),
    })
}

/// Interval topology of a preorder.
pub fn interval_topology(r: &Relation) -> Result<FiniteTopology> {
    let intervals = open_intervals(r)?;
    generate_topology(r.carrier().clone(), &intervals)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseCheck {
    pub holds: bool,
    /// Least open set that is not a union of family members.
    pub witness: Option<Vec<String>>,
}

/// Whether every open of `t` is a union of members of `family`.
pub fn is_base(family: &[Mask], t: &FiniteTopology) -> Result<BaseCheck> {
    if let Some(&m) = family.iter().find(|&&m| !t.is_open(m)) {
        return Err(Error::NotOpen(format!("{{{}}}", t.labels(m).join(", "))));
    }
    let witness = t.opens.iter().copied().find(|&u| {
        family.iter().filter(|&&b| b & !u == 0).fold(0, |acc, &b| acc | b) != u
    });
    Ok(BaseCheck {
        holds: witness.is_none(),
        witness: witness.map(|w| t.labels(w)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub connected: bool,
    pub clopen_witness: Option<Vec<String>>,
}

pub fn least_clopen(t: &FiniteTopology) -> Option<Mask> {
    let full = t.full();
    t.opens
        .iter()
        .copied()
        .find(|&u| u != 0 && u != full && t.is_open(full & !u))
}

pub fn connectivity_report(t: &FiniteTopology) -> ConnectivityReport {
    let w = least_clopen(t);
    ConnectivityReport {
        connected: w.is_none(),
        clopen_witness: w.map(|m| t.labels(m)),
    }
}

/// Pairs `xFy` whose open interval `(x, y)` is empty, in lexicographic order.
pub fn gaps(r: &Relation) -> Result<Vec<(usize, usize)>> {
    require_preorder(r)?;
    let f = r.asymmetric_part();
    let n = r.len();
    Ok(f.pairs()
        .filter(|&(x, y)| !(0..n).any(|z| f.contains(x, z) && f.contains(z, y)))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    pub all_sups: bool,
    pub all_infs: bool,
    pub compact: bool,
    /// `compact ⇔ (all_sups ∧ all_infs)`
    pub equivalence_holds: bool,
}

/// Least element of `set` under `r`, if any.
fn least_in(r: &Relation, set: &[usize]) -> Option<usize> {
    set.iter().copied().find(|&a| set.iter().all(|&u| r.contains(a, u)))
}

/// Existence of suprema and infima of every subset (the empty set included)
/// by exhaustive sweep, and compactness of the interval topology by
/// extracting a finite subcover from the cover by all open sets.
pub fn order_completeness_report(l: &Loset) -> Result<CompletenessReport> {
    let n = l.len();
    if n > MAX_COMPLETENESS_SIZE {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_COMPLETENESS_SIZE,
        });
    }
    let r = l.relation();
    let dual = r.inverse();
    let bound_exists = |rel: &Relation, b: Mask| {
        let members = mask_elements(b);
        let bounds: Vec<usize> = (0..n)
            .filter(|&a| members.iter().all(|&m| rel.contains(m, a)))
            .collect();
        least_in(rel, &bounds).is_some()
    };
    let all_sups = (0..=full_mask(n)).all(|b| bound_exists(&r, b));
    let all_infs = (0..=full_mask(n)).all(|b| bound_exists(&dual, b));

    let t = interval_topology(&r)?;
    let mut subcover: Vec<Mask> = Vec::new();
    let mut covered: Mask = 0;
    for x in 0..n {
        if covered >> x & 1 == 1 {
            continue;
        }
        match t.opens.iter().rev().find(|&&u| u >> x & 1 == 1) {
            Some(&u) => {
                subcover.push(u);
                covered |= u;
            }
            None => break,
        }
    }
    let compact = covered == t.full() && subcover.len() <= t.opens.len();
    Ok(CompletenessReport {
        all_sups,
        all_infs,
        compact,
        equivalence_holds: compact == (all_sups && all_infs),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContinuityCheck {
    pub holds: bool,
    /// An open of the target whose preimage is not open.
    pub witness: Option<Vec<String>>,
}

/// Whether the preimage under `f` of every open of `tb` is open in `ta`.
pub fn continuity_check(f: &[usize], ta: &FiniteTopology, tb: &FiniteTopology) -> Result<ContinuityCheck> {
    if f.len() != ta.carrier.len() || f.iter().any(|&y| y >= tb.carrier.len()) {
        return Err(Error::Validation("map must send every element into the target carrier".into()));
    }
    let witness = tb
        .opens
        .iter()
        .copied()
        .find(|&v| !ta.is_open(preimage(f, v)));
    Ok(ContinuityCheck {
        holds: witness.is_none(),
        witness: witness.map(|w| tb.labels(w)),
    })
}

fn preimage(f: &[usize], v: Mask) -> Mask {
    mask_of((0..f.len()).filter(|&x| v >> f[x] & 1 == 1))
}

fn image(f: &[usize], u: Mask) -> Mask {
    mask_of(mask_elements(u).into_iter().map(|x| f[x]))
}

/// Interval topology of the sorted distinct utility values, and the map
/// from elements to grid points.
pub fn utility_grid(u: &UtilityAssignment) -> Result<(FiniteTopology, Vec<usize>)> {
    let grid: Vec<Rational> = u.values.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let carrier = Carrier::new(grid.iter().map(|q| q.to_string()))?;
    let map: Vec<usize> = u
        .values
        .iter()
        .map(|v| grid.binary_search(v).expect("value is on the grid"))
        .collect();
    let t = interval_topology(&Loset::chain(carrier).relation())?;
    Ok((t, map))
}

/// Continuity of a utility against the interval topology of its image grid,
/// the domain carrying the interval topology of `r`.
pub fn utility_continuity(r: &Relation, u: &UtilityAssignment) -> Result<ContinuityCheck> {
    let ta = interval_topology(r)?;
    let (tb, map) = utility_grid(u)?;
    continuity_check(&map, &ta, &tb)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionReport {
    pub domain: FiniteTopology,
    pub index: FiniteTopology,
    pub checks: Vec<InvariantCheck>,
    pub domain_connected: bool,
    pub index_connected: bool,
}

impl ProjectionReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Compares the interval topology of a composed bubble system with that of
/// its index through the projection.
pub fn projection_check(sys: &BubbleSystem) -> Result<ProjectionReport> {
    let n = sys.carrier().len();
    if n > MAX_PROJECTION_SIZE {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_PROJECTION_SIZE,
        });
    }
    let r = bubble_compose(sys)?;
    let index_rel = sys.index().relation();
    let ivs_a = open_intervals(&r)?;
    let ivs_i = open_intervals(&index_rel)?;
    let ta = generate_topology(r.carrier().clone(), &ivs_a)?;
    let ti = generate_topology(index_rel.carrier().clone(), &ivs_i)?;
    let pi = sys.projection_to_index();

    let nonempty = |ivs: &[Interval]| -> BTreeSet<Mask> {
        ivs.iter()
            .filter(|iv| !iv.is_empty())
            .map(|iv| mask_of(iv.extent.iter().copied()))
            .collect()
    };
    let ja = nonempty(&ivs_a);
    let ki = nonempty(&ivs_i);
    let bijection = ja.iter().all(|&j| ki.contains(&image(&pi, j)) && preimage(&pi, image(&pi, j)) == j)
        && ki.iter().all(|&k| ja.contains(&preimage(&pi, k)) && image(&pi, preimage(&pi, k)) == k);

    let mut family: Vec<Mask> = ja.iter().copied().collect();
    family.push(ta.full());
    let base = is_base(&family, &ta)?.holds;

    let continuous = ti.opens.iter().all(|&v| ta.is_open(preimage(&pi, v)));
    let open_map = ta.opens.iter().all(|&u| ti.is_open(image(&pi, u)));

    let pulled: BTreeSet<Mask> = ti.opens.iter().map(|&v| preimage(&pi, v)).collect();
    let same_topology = pulled == ta.opens.iter().copied().collect::<BTreeSet<_>>();

    let domain_connected = least_clopen(&ta).is_none();
    let index_connected = least_clopen(&ti).is_none();

    let mut dense = ta.full();
    for x in 0..n {
        let smaller = dense & !(1 << x);
        if ta.is_dense(smaller) {
            dense = smaller;
        }
    }
    let dense_image = ta.is_dense(dense) && ti.is_dense(image(&pi, dense));

    let checks = vec![
        InvariantCheck::new("interval_extents_correspond_under_projection", bijection),
        InvariantCheck::new("interval_extents_form_base", base),
        InvariantCheck::new("projection_continuous_and_open", continuous && open_map),
        InvariantCheck::new("domain_topology_is_pulled_back_index_topology", same_topology),
        InvariantCheck::new("domain_connected_iff_index_connected", domain_connected == index_connected),
        InvariantCheck::new("projection_of_minimal_dense_set_is_dense", dense_image),
    ];
    Ok(ProjectionReport {
        domain: ta,
        index: ti,
        checks,
        domain_connected,
        index_connected,
    })
}

pub const MAX_COMB_TEETH: usize = MAX_TOPOLOGY_SIZE - 4;

/// Finite truncation of the comb example: a chain
/// `0 < 1/n < ... < 1/2 < 1` plus three isolated elements `r1, r2, r3`.
pub fn truncated_comb(n: usize) -> Result<Relation> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    if n > MAX_COMB_TEETH {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_COMB_TEETH,
        });
    }
    let mut labels = vec!["0".to_string()];
    labels.extend((1..=n).rev().map(|i| if i == 1 { "1".to_string() } else { format!("1/{i}") }));
    labels.extend(["r1", "r2", "r3"].map(String::from));
    let carrier = Carrier::new(labels)?;
    let chain_len = n + 1;
    Ok(Relation::from_fn(carrier, |x, y| x == y || (x < y && y < chain_len)))
}

/// Topology report: opens (sorted), connectedness and gaps, by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopologyReport {
    pub opens: Vec<Vec<String>>,
    pub connected: bool,
    pub gaps: Vec<(String, String)>,
}

pub fn topology_report(r: &Relation) -> Result<TopologyReport> {
    let t = interval_topology(r)?;
    let c = r.carrier();
    Ok(TopologyReport {
        opens: t.labelled_opens(),
        connected: least_clopen(&t).is_none(),
        gaps: gaps(r)?
            .into_iter()
            .map(|(x, y)| (c.label(x).to_string(), c.label(y).to_string()))
            .collect(),
    })
}

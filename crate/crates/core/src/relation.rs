//! Finite binary relations stored as packed boolean matrices.
//!
//! A [`Relation`] lives on a shared [`Carrier`]: an ordered list of distinct
//! labels. The carrier order drives every iteration in this crate, so
//! witnesses are always the lexicographically least violating tuple of
//! element indices.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result, Witness};

/// Ordered list of distinct element labels (at least one).
#[derive(Clone, PartialEq, Eq)]
pub struct Carrier {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Carrier {
    pub fn new<I, S>(labels: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Arc::new(Carrier { labels, index }))
    }

    /// The carrier `e0, e1, ..., e{n-1}`.
    pub fn canonical(n: usize) -> Result<Arc<Self>> {
        Carrier::new((0..n).map(|i| format!("e{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn witness(&self, indices: &[usize]) -> Witness {
        Witness(indices.iter().map(|&i| self.labels[i].clone()).collect())
    }
}

impl fmt::Debug for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

pub(crate) fn same_carrier(a: &Arc<Carrier>, b: &Arc<Carrier>) -> bool {
    Arc::ptr_eq(a, b) || a.labels == b.labels
}

/// A binary relation on a finite carrier.
///
/// Row `i` holds the set `{j : (e_i, e_j) ∈ R}` packed into 64-bit words.
#[derive(Clone)]
pub struct Relation {
    carrier: Arc<Carrier>,
    stride: usize,
    bits: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Inverse,
    Complement,
    DiagonalOfCarrier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineKind {
    Union,
    Intersection,
    Difference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SaturationMode {
    /// `xEy ∧ ySz ⇒ xSz`
    Left,
    /// `xSy ∧ yEz ⇒ xSz`
    Right,
    Full,
    /// `xEy ∧ ySz ⇒ ∃t: zEt ∧ xSt`
    Weak,
}

impl Relation {
    fn blank(carrier: Arc<Carrier>) -> Self {
        let n = carrier.len();
        let stride = n.div_ceil(64);
        Relation {
            carrier,
            stride,
            bits: vec![0; stride * n],
        }
    }

    pub fn empty(carrier: Arc<Carrier>) -> Self {
        Self::blank(carrier)
    }

    /// The trivial relation `A²`.
    pub fn full(carrier: Arc<Carrier>) -> Self {
        Self::from_fn(carrier, |_, _| true)
    }

    /// The diagonal `D_A`.
    pub fn diagonal(carrier: Arc<Carrier>) -> Self {
        Self::from_fn(carrier, |i, j| i == j)
    }

    pub fn from_fn(carrier: Arc<Carrier>, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Self::blank(carrier);
        let n = r.len();
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    r.set(i, j);
                }
            }
        }
        r
    }

    pub fn from_index_pairs(
        carrier: Arc<Carrier>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut r = Self::blank(carrier);
        let n = r.len();
        for (i, j) in pairs {
            assert!(i < n && j < n, "pair ({i}, {j}) out of range for carrier of size {n}");
            r.set(i, j);
        }
        r
    }

    /// Builds a relation from label pairs; duplicates collapse.
    pub fn from_pairs<S: AsRef<str>>(carrier: Arc<Carrier>, pairs: &[(S, S)]) -> Result<Self> {
        let mut r = Self::blank(carrier);
        for (a, b) in pairs {
            let i = r.carrier.index_of(a.as_ref())?;
            let j = r.carrier.index_of(b.as_ref())?;
            r.set(i, j);
        }
        Ok(r)
    }

    /// Relation whose row-major bit `i*n + j` is bit `i*n + j` of `mask`.
    /// Only meaningful for `n*n <= 64`.
    pub fn from_mask(carrier: Arc<Carrier>, mask: u64) -> Self {
        let n = carrier.len();
        assert!(n * n <= 64, "mask encoding needs n*n <= 64");
        Self::from_fn(carrier, |i, j| mask >> (i * n + j) & 1 == 1)
    }

    pub fn to_mask(&self) -> u64 {
        let n = self.len();
        assert!(n * n <= 64, "mask encoding needs n*n <= 64");
        self.pairs().fold(0, |acc, (i, j)| acc | 1 << (i * n + j))
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    /// Number of carrier elements.
    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Number of pairs in the relation.
    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn contains_labels(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.contains(self.carrier.index_of(a)?, self.carrier.index_of(b)?))
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.stride + j / 64] |= 1 << (j % 64);
    }

    #[inline]
    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.stride..(i + 1) * self.stride]
    }

    /// Indices `j` with `(i, j)` in the relation, ascending.
    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.len();
        (0..n).filter(move |&j| self.contains(i, j))
    }

    /// All pairs in row-major (lexicographic) order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (0..n).filter(move |&j| self.contains(i, j)).map(move |j| (i, j)))
    }

    pub fn label_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .map(|(i, j)| {
                (
                    self.carrier.label(i).to_string(),
                    self.carrier.label(j).to_string(),
                )
            })
            .collect()
    }

    fn check_carrier(&self, other: &Relation) -> Result<()> {
        if same_carrier(&self.carrier, &other.carrier) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    /// Same relation on an equal carrier value (used after parsing).
    pub fn rehome(&self, carrier: Arc<Carrier>) -> Result<Self> {
        if !same_carrier(&self.carrier, &carrier) {
            return Err(Error::CarrierMismatch);
        }
        Ok(Relation {
            carrier,
            stride: self.stride,
            bits: self.bits.clone(),
        })
    }

    pub fn transform(&self, kind: TransformKind) -> Relation {
        match kind {
            TransformKind::Inverse => self.inverse(),
            TransformKind::Complement => self.complement(),
            TransformKind::DiagonalOfCarrier => Relation::diagonal(self.carrier.clone()),
        }
    }

    pub fn inverse(&self) -> Relation {
        Relation::from_fn(self.carrier.clone(), |i, j| self.contains(j, i))
    }

    pub fn complement(&self) -> Relation {
        let n = self.len();
        let mut r = self.clone();
        for w in r.bits.iter_mut() {
            *w = !*w;
        }
        // clear padding bits beyond n in each row
        let tail = n % 64;
        if tail != 0 {
            let mask = (1u64 << tail) - 1;
            for i in 0..n {
                r.bits[i * r.stride + r.stride - 1] &= mask;
            }
        }
        r
    }

    pub fn combine(&self, other: &Relation, kind: CombineKind) -> Result<Relation> {
        self.check_carrier(other)?;
        let mut r = self.clone();
        for (w, &o) in r.bits.iter_mut().zip(&other.bits) {
            *w = match kind {
                CombineKind::Union => *w | o,
                CombineKind::Intersection => *w & o,
                CombineKind::Difference => *w & !o,
            };
        }
        Ok(r)
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.combine(other, CombineKind::Union)
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation> {
        self.combine(other, CombineKind::Intersection)
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.combine(other, CombineKind::Difference)
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.check_carrier(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0))
    }

    pub fn is_disjoint(&self, other: &Relation) -> Result<bool> {
        self.check_carrier(other)?;
        Ok(self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & b == 0))
    }

    /// `I_R = R ∩ R⁻¹`
    pub fn symmetric_part(&self) -> Relation {
        let inv = self.inverse();
        self.combine(&inv, CombineKind::Intersection).expect("same carrier")
    }

    /// `P_R = R \ I_R`
    pub fn asymmetric_part(&self) -> Relation {
        let inv = self.inverse();
        self.combine(&inv, CombineKind::Difference).expect("same carrier")
    }

    /// `U_R = R ∪ R⁻¹`
    pub fn comparability(&self) -> Relation {
        let inv = self.inverse();
        self.combine(&inv, CombineKind::Union).expect("same carrier")
    }

    /// `E_R = (U_R)^c`: pairs related in neither direction.
    pub fn incomparability(&self) -> Relation {
        self.comparability().complement()
    }

    pub fn derived_parts(&self) -> DerivedParts {
        DerivedParts {
            symmetric_part: self.symmetric_part(),
            asymmetric_part: self.asymmetric_part(),
            comparability: self.comparability(),
            incomparability: self.incomparability(),
        }
    }

    /// Restriction to the listed elements, on a new carrier with the same labels.
    pub fn restrict(&self, elements: &[usize]) -> Result<Relation> {
        let carrier = Carrier::new(elements.iter().map(|&i| self.carrier.label(i).to_string()))?;
        Ok(Relation::from_fn(carrier, |a, b| {
            self.contains(elements[a], elements[b])
        }))
    }

    // --- predicates -------------------------------------------------------

    pub fn reflexive_violation(&self) -> Option<Vec<usize>> {
        (0..self.len()).find(|&x| !self.contains(x, x)).map(|x| vec![x])
    }

    pub fn irreflexive_violation(&self) -> Option<Vec<usize>> {
        (0..self.len()).find(|&x| self.contains(x, x)).map(|x| vec![x])
    }

    fn first_pair(&self, mut bad: impl FnMut(usize, usize) -> bool) -> Option<Vec<usize>> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if bad(x, y) {
                    return Some(vec![x, y]);
                }
            }
        }
        None
    }

    pub fn symmetric_violation(&self) -> Option<Vec<usize>> {
        self.first_pair(|x, y| self.contains(x, y) && !self.contains(y, x))
    }

    pub fn antisymmetric_violation(&self) -> Option<Vec<usize>> {
        self.first_pair(|x, y| x != y && self.contains(x, y) && self.contains(y, x))
    }

    pub fn asymmetric_violation(&self) -> Option<Vec<usize>> {
        self.first_pair(|x, y| self.contains(x, y) && self.contains(y, x))
    }

    pub fn complete_violation(&self) -> Option<Vec<usize>> {
        self.first_pair(|x, y| !self.contains(x, y) && !self.contains(y, x))
    }

    /// Least `(x, y, z)` with `xRy`, `yRz` and not `xRz`.
    pub fn transitive_violation(&self) -> Option<Vec<usize>> {
        let n = self.len();
        for x in 0..n {
            for y in self.successors(x) {
                for z in 0..n {
                    if self.contains(y, z) && !self.contains(x, z) {
                        return Some(vec![x, y, z]);
                    }
                }
            }
        }
        None
    }

    /// Least `(x, y, z)` with `xRz` but neither `xRy` nor `yRz`.
    pub fn negative_transitive_violation(&self) -> Option<Vec<usize>> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if self.contains(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.contains(x, z) && !self.contains(y, z) {
                        return Some(vec![x, y, z]);
                    }
                }
            }
        }
        None
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexive_violation().is_none()
    }

    pub fn is_irreflexive(&self) -> bool {
        self.irreflexive_violation().is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric_violation().is_none()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.antisymmetric_violation().is_none()
    }

    pub fn is_asymmetric(&self) -> bool {
        self.asymmetric_violation().is_none()
    }

    pub fn is_complete(&self) -> bool {
        self.complete_violation().is_none()
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.len();
        // xRy ⇒ row(y) ⊆ row(x)
        (0..n).all(|x| {
            self.successors(x).all(|y| {
                self.row(y)
                    .iter()
                    .zip(self.row(x))
                    .all(|(&ry, &rx)| ry & !rx == 0)
            })
        })
    }

    pub fn is_negatively_transitive(&self) -> bool {
        self.negative_transitive_violation().is_none()
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_preorder() && self.is_antisymmetric()
    }

    pub fn is_linear_order(&self) -> bool {
        self.is_partial_order() && self.is_complete()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    pub fn preorder_violation(&self) -> Option<Vec<usize>> {
        self.reflexive_violation()
            .or_else(|| self.transitive_violation())
    }

    pub fn partial_order_violation(&self) -> Option<Vec<usize>> {
        self.preorder_violation()
            .or_else(|| self.antisymmetric_violation())
    }

    pub fn equivalence_violation(&self) -> Option<Vec<usize>> {
        self.reflexive_violation()
            .or_else(|| self.symmetric_violation())
            .or_else(|| self.transitive_violation())
    }

    pub fn check_properties(&self) -> PropertyReport {
        let c = &self.carrier;
        let check = |v: Option<Vec<usize>>| PropertyCheck {
            holds: v.is_none(),
            witness: v.map(|w| c.witness(&w)),
        };
        PropertyReport {
            reflexive: check(self.reflexive_violation()),
            irreflexive: check(self.irreflexive_violation()),
            symmetric: check(self.symmetric_violation()),
            antisymmetric: check(self.antisymmetric_violation()),
            asymmetric: check(self.asymmetric_violation()),
            complete: check(self.complete_violation()),
            transitive: check(self.transitive_violation()),
            negatively_transitive: check(self.negative_transitive_violation()),
        }
    }

    // --- saturation -------------------------------------------------------

    pub fn saturation_violation(&self, e: &Relation, mode: SaturationMode) -> Result<Option<Vec<usize>>> {
        self.check_carrier(e)?;
        let s = self;
        let n = s.len();
        let found = match mode {
            SaturationMode::Left => first_triple(n, |x, y, z| {
                e.contains(x, y) && s.contains(y, z) && !s.contains(x, z)
            }),
            SaturationMode::Right => first_triple(n, |x, y, z| {
                s.contains(x, y) && e.contains(y, z) && !s.contains(x, z)
            }),
            SaturationMode::Full => s
                .saturation_violation(e, SaturationMode::Left)?
                .or(s.saturation_violation(e, SaturationMode::Right)?),
            SaturationMode::Weak => first_triple(n, |x, y, z| {
                e.contains(x, y) && s.contains(y, z) && !(0..n).any(|t| e.contains(z, t) && s.contains(x, t))
            }),
        };
        Ok(found)
    }

    pub fn is_saturated(&self, e: &Relation, mode: SaturationMode) -> Result<bool> {
        Ok(self.saturation_violation(e, mode)?.is_none())
    }

    pub fn check_saturation(&self, e: &Relation, mode: SaturationMode) -> Result<PropertyCheck> {
        let v = self.saturation_violation(e, mode)?;
        Ok(PropertyCheck {
            holds: v.is_none(),
            witness: v.map(|w| self.carrier.witness(&w)),
        })
    }

    /// `R ∪ R⁻¹ = A² \ E`, for an equivalence `E`.
    pub fn is_e_complete(&self, e: &Relation) -> Result<bool> {
        self.check_carrier(e)?;
        if let Some(w) = e.equivalence_violation() {
            return Err(Error::NotAnEquivalence(e.carrier.witness(&w)));
        }
        Ok(self.comparability() == e.complement())
    }

    /// Least transitive relation containing `self` (Warshall on packed rows).
    pub fn transitive_closure(&self) -> Relation {
        let n = self.len();
        let stride = self.stride;
        let mut r = self.clone();
        for k in 0..n {
            for i in 0..n {
                if r.contains(i, k) {
                    for w in 0..stride {
                        let add = r.bits[k * stride + w];
                        r.bits[i * stride + w] |= add;
                    }
                }
            }
        }
        r
    }

    /// Row/column permutation onto another labelling: `result[p(i)][p(j)] = self[i][j]`.
    pub fn relabel(&self, carrier: Arc<Carrier>, map: &[usize]) -> Relation {
        assert_eq!(map.len(), self.len());
        let mut r = Relation::blank(carrier);
        for (i, j) in self.pairs() {
            r.set(map[i], map[j]);
        }
        r
    }
}

fn first_triple(n: usize, mut bad: impl FnMut(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some(vec![x, y, z]);
                }
            }
        }
    }
    None
}

impl PartialEq for Relation {
    fn eq(&self, other: &Self) -> bool {
        same_carrier(&self.carrier, &other.carrier) && self.bits == other.bits
    }
}

impl Eq for Relation {}

impl std::hash::Hash for Relation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.carrier.labels.hash(state);
        self.bits.hash(state);
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .pairs()
            .map(|(i, j)| format!("({},{})", self.carrier.label(i), self.carrier.label(j)))
            .collect();
        write!(f, "Relation{:?}{{{}}}", self.carrier, pairs.join(" "))
    }
}

/// `I_R`, `P_R`, `U_R`, `E_R` of a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedParts {
    pub symmetric_part: Relation,
    pub asymmetric_part: Relation,
    pub comparability: Relation,
    pub incomparability: Relation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyCheck {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Flags for the basic relation properties, each with a violating tuple when false.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub reflexive: PropertyCheck,
    pub irreflexive: PropertyCheck,
    pub symmetric: PropertyCheck,
    pub antisymmetric: PropertyCheck,
    pub asymmetric: PropertyCheck,
    pub complete: PropertyCheck,
    pub transitive: PropertyCheck,
    pub negatively_transitive: PropertyCheck,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Arc<Carrier> {
        Carrier::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn make_relation_cases() {
        let ab = Carrier::new(["a", "b"]).unwrap();
        let r = Relation::from_pairs::<&str>(ab.clone(), &[]).unwrap();
        assert!(r.is_empty());
        let r = Relation::from_pairs(ab, &[("a", "a"), ("b", "b"), ("a", "b"), ("a", "b")]).unwrap();
        assert_eq!(r.count(), 3);
        let a = Carrier::new(["a"]).unwrap();
        assert_eq!(
            Relation::from_pairs(a, &[("a", "x")]),
            Err(Error::UnknownLabel("x".into()))
        );
    }

    #[test]
    fn carrier_rejects_empty_and_duplicates() {
        assert_eq!(Carrier::new(Vec::<String>::new()).unwrap_err(), Error::EmptyCarrier);
        assert_eq!(
            Carrier::new(["a", "a"]).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
    }

    #[test]
    fn transforms() {
        let ab = Carrier::new(["a", "b"]).unwrap();
        let r = Relation::from_pairs(ab.clone(), &[("a", "b")]).unwrap();
        assert_eq!(r.inverse().label_pairs(), vec![("b".into(), "a".into())]);
        let d = r.transform(TransformKind::DiagonalOfCarrier);
        assert_eq!(d, Relation::diagonal(ab.clone()));
        assert_eq!(
            d.complement(),
            Relation::from_pairs(ab, &[("a", "b"), ("b", "a")]).unwrap()
        );
    }

    #[test]
    fn complement_clears_padding_on_wide_carriers() {
        let c = Carrier::canonical(70).unwrap();
        let r = Relation::empty(c.clone()).complement();
        assert_eq!(r.count(), 70 * 70);
        assert_eq!(r, Relation::full(c));
    }

    #[test]
    fn combine_cases() {
        let ab = Carrier::new(["a", "b"]).unwrap();
        let d = Relation::diagonal(ab.clone());
        let ab_pair = Relation::from_pairs(ab.clone(), &[("a", "b")]).unwrap();
        let u = d.union(&ab_pair).unwrap();
        assert!(u.is_reflexive() && u.contains(0, 1) && !u.contains(1, 0));
        assert!(u.intersection(&u.complement()).unwrap().is_empty());
        let other = Relation::empty(Carrier::new(["x", "y"]).unwrap());
        assert_eq!(d.union(&other), Err(Error::CarrierMismatch));
    }

    #[test]
    fn derived_parts_of_trivial_and_chain() {
        let ab = Carrier::new(["a", "b"]).unwrap();
        let parts = Relation::full(ab.clone()).derived_parts();
        assert_eq!(parts.symmetric_part, Relation::full(ab.clone()));
        assert!(parts.asymmetric_part.is_empty());
        assert!(parts.incomparability.is_empty());

        let c = abc();
        let r = Relation::diagonal(c.clone())
            .union(&Relation::from_pairs(c.clone(), &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap())
            .unwrap();
        let parts = r.derived_parts();
        assert_eq!(parts.symmetric_part, Relation::diagonal(c.clone()));
        assert_eq!(
            parts.asymmetric_part.label_pairs(),
            vec![
                ("a".into(), "b".into()),
                ("a".into(), "c".into()),
                ("b".into(), "c".into())
            ]
        );
        assert!(parts.incomparability.is_empty());
    }

    #[test]
    fn property_witnesses() {
        let c = abc();
        let f = Relation::from_pairs(c.clone(), &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert!(f.check_properties().negatively_transitive.holds);

        let f = Relation::from_pairs(c.clone(), &[("a", "b")]).unwrap();
        let rep = f.check_properties();
        assert!(!rep.negatively_transitive.holds);
        assert_eq!(
            rep.negatively_transitive.witness,
            Some(Witness(vec!["a".into(), "c".into(), "b".into()]))
        );

        let d = Relation::diagonal(c).check_properties();
        assert!(d.reflexive.holds && d.symmetric.holds && d.antisymmetric.holds && d.transitive.holds);
        assert!(!d.complete.holds);
        assert_eq!(d.complete.witness, Some(Witness(vec!["a".into(), "b".into()])));
    }

    #[test]
    fn left_saturation_witness() {
        let c = abc();
        let s = Relation::from_pairs(c.clone(), &[("a", "b")]).unwrap();
        let e = Relation::diagonal(c.clone())
            .union(&Relation::from_pairs(c, &[("a", "c"), ("c", "a")]).unwrap())
            .unwrap();
        let chk = s.check_saturation(&e, SaturationMode::Left).unwrap();
        assert!(!chk.holds);
        assert_eq!(chk.witness, Some(Witness(vec!["c".into(), "a".into(), "b".into()])));
    }

    #[test]
    fn e_completeness() {
        let c = abc();
        let strict = Relation::from_pairs(c.clone(), &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert!(strict.is_e_complete(&Relation::diagonal(c.clone())).unwrap());
        assert!(Relation::empty(c.clone()).is_e_complete(&Relation::full(c.clone())).unwrap());
        let not_eq = Relation::from_pairs(c.clone(), &[("a", "b")]).unwrap();
        assert!(matches!(strict.is_e_complete(&not_eq), Err(Error::NotAnEquivalence(_))));
    }

    #[test]
    fn closure_two_step() {
        let c = abc();
        let r = Relation::from_pairs(c.clone(), &[("a", "b"), ("b", "c")]).unwrap();
        let t = r.transitive_closure();
        assert_eq!(
            t,
            Relation::from_pairs(c, &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap()
        );
    }

    #[test]
    fn mask_round_trip() {
        let c = abc();
        for mask in [0u64, 1, 0b101010101, 511] {
            assert_eq!(Relation::from_mask(c.clone(), mask).to_mask(), mask);
        }
    }
}

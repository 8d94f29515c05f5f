use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::cantor::cantor_embed;
use super::enumeration::RationalEnumeration;
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::invariants::InvariantCheck;
use crate::relation::{Carrier, Relation};
use crate::structure::{bubble_decompose, BubbleSystem};

/// One of the four intervals with endpoints 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    Closed,
    ClosedOpen,
    OpenClosed,
    Open,
}

impl fmt::Display for IntervalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IntervalKind::Closed => "[0,1]",
            IntervalKind::ClosedOpen => "[0,1)",
            IntervalKind::OpenClosed => "(0,1]",
            IntervalKind::Open => "(0,1)",
        })
    }
}

impl FromStr for IntervalKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "[0,1]" => Ok(IntervalKind::Closed),
            "[0,1)" => Ok(IntervalKind::ClosedOpen),
            "(0,1]" => Ok(IntervalKind::OpenClosed),
            "(0,1)" => Ok(IntervalKind::Open),
            other => Err(Error::parse("interval", format!("unknown interval `{other}`"))),
        }
    }
}

/// Exact rational utility values per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityAssignment {
    pub carrier: Arc<Carrier>,
    pub values: Vec<Rational>,
    pub interval: IntervalKind,
}

impl UtilityAssignment {
    pub fn value(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn value_of(&self, label: &str) -> Result<&Rational> {
        Ok(&self.values[self.carrier.index_of(label)?])
    }

    pub fn labelled_values(&self) -> BTreeMap<String, String> {
        self.carrier
            .labels()
            .iter()
            .zip(&self.values)
            .map(|(l, v)| (l.clone(), v.to_string()))
            .collect()
    }
}

impl Serialize for UtilityAssignment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("UtilityAssignment", 2)?;
        st.serialize_field("interval", &self.interval.to_string())?;
        st.serialize_field("values", &self.labelled_values())?;
        st.end()
    }
}

/// `u(x) < u(y) ⇔ xFy` and `u(x) = u(y) ⇔ x𝓔y`, where `F` is the strict
/// part of `r` and `𝓔` the incomparability of `F`.
pub fn utility_conditions(r: &Relation, u: &UtilityAssignment) -> Vec<InvariantCheck> {
    let f = r.asymmetric_part();
    let cal_e = f.incomparability();
    let n = r.len();
    let v = &u.values;
    let pairs = || (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    vec![
        InvariantCheck::new(
            "utility_strictly_below_iff_strict_preference",
            pairs().all(|(x, y)| (v[x] < v[y]) == f.contains(x, y)),
        ),
        InvariantCheck::new(
            "utility_equal_iff_same_bubble",
            pairs().all(|(x, y)| (v[x] == v[y]) == cal_e.contains(x, y)),
        ),
    ]
}

/// Utility of a preorder with negatively transitive strict part: the
/// embedding of its bubble index composed with the projection.
pub fn generalized_utility(r: &Relation) -> Result<UtilityAssignment> {
    let sys = bubble_decompose(r)?;
    let u = system_utility(&sys)?;
    if let Some(c) = utility_conditions(r, &u).into_iter().find(|c| !c.holds) {
        return Err(Error::invariant(&c.name, format!("{r:?}")));
    }
    Ok(u)
}

/// `u′ ∘ π` for a bubble system, `u′` the embedding of the index.
pub fn system_utility(sys: &BubbleSystem) -> Result<UtilityAssignment> {
    let embedding = cantor_embed(sys.index(), &RationalEnumeration)?;
    let order = sys.index().order();
    let values = sys
        .projection()
        .iter()
        .map(|&rank| embedding.values[order[rank]].clone())
        .collect();
    Ok(UtilityAssignment {
        carrier: sys.carrier().clone(),
        values,
        interval: IntervalKind::Closed,
    })
}

/// `h(q) = (q + 1 + |q|) / (q + 3 + 3|q|)`, strictly increasing from ℚ
/// into `(0, 1/2)`.
pub fn h_map(q: &Rational) -> Rational {
    let a = q.abs();
    let one = Rational::one();
    let three = Rational::integer(3);
    let num = &(q + &one) + &a;
    let den = &(q + &three) + &(&three * &a);
    &num / &den
}

/// `x ↦ x / (1 + |x|)`, strictly increasing from ℚ onto `(-1, 1) ∩ ℚ`.
pub fn squash(q: &Rational) -> Rational {
    q / &(&Rational::one() + &q.abs())
}

/// `y ↦ 2(y + 1) / (y + 3)`, strictly increasing from `(-1, 1)` onto `(0, 1)`.
pub fn shift_to_unit(y: &Rational) -> Rational {
    let one = Rational::one();
    let num = &Rational::integer(2) * &(y + &one);
    &num / &(y + &Rational::integer(3))
}

/// Strictly increasing bijection from ℚ onto `(0, 1) ∩ ℚ`:
/// [`shift_to_unit`] after [`squash`], equal to `2·h`.
pub fn unit_bijection(q: &Rational) -> Rational {
    shift_to_unit(&squash(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn h_pinned_values() {
        assert_eq!(h_map(&r("0")), r("1/3"));
        assert_eq!(h_map(&r("1")), r("3/7"));
        assert_eq!(h_map(&r("-1")), r("1/5"));
    }

    #[test]
    fn bijection_is_twice_h() {
        for s in ["0", "1", "-1", "7/3", "-22/7", "1000"] {
            let q = r(s);
            assert_eq!(unit_bijection(&q), &Rational::integer(2) * &h_map(&q));
        }
    }

    #[test]
    fn interval_kind_round_trip() {
        for k in [IntervalKind::Closed, IntervalKind::ClosedOpen, IntervalKind::OpenClosed, IntervalKind::Open] {
            assert_eq!(k.to_string().parse::<IntervalKind>().unwrap(), k);
        }
    }

    #[test]
    fn utility_of_two_bubbles() {
        let c = Carrier::new(["x1", "x2", "y"]).unwrap();
        let rel = Relation::diagonal(c.clone())
            .union(&Relation::from_pairs(c, &[("x1", "y"), ("x2", "y")]).unwrap())
            .unwrap();
        let u = generalized_utility(&rel).unwrap();
        assert_eq!(u.value_of("x1").unwrap(), &r("0"));
        assert_eq!(u.value_of("x2").unwrap(), &r("0"));
        assert_eq!(u.value_of("y").unwrap(), &r("1"));
        assert_eq!(
            serde_json::to_string(&u).unwrap(),
            r#"{"interval":"[0,1]","values":{"x1":"0","x2":"0","y":"1"}}"#
        );
    }

    #[test]
    fn utility_of_three_singletons_and_full() {
        let c = Carrier::new(["a", "b", "c"]).unwrap();
        let chain = Relation::from_fn(c.clone(), |i, j| i <= j);
        let u = generalized_utility(&chain).unwrap();
        let got: Vec<String> = u.values.iter().map(|q| q.to_string()).collect();
        assert_eq!(got, ["0", "1/2", "1"]);
        let u = generalized_utility(&Relation::full(c)).unwrap();
        assert!(u.values.iter().all(|q| q.is_zero()));
    }
}

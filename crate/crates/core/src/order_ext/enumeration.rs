use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// The sequence `b₁ = 0, b₂ = 1`, then the rationals of `(0, 1)` in
/// Calkin–Wilf breadth-first order: `1/2, 1/3, 2/3, 1/4, 3/5, 2/5, 3/4, ...`.
///
/// Term `s ≥ 3` is the left child `a/(a+b)` of the Calkin–Wilf node `a/b`
/// with breadth-first index `s - 2`. Indices are unbounded.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalEnumeration;

impl RationalEnumeration {
    /// `b_s` for `s ≥ 1`.
    pub fn term(&self, s: &BigUint) -> Result<Rational> {
        if s.is_zero() {
            return Err(Error::Validation("enumeration indices start at 1".into()));
        }
        if s.is_one() {
            return Ok(Rational::zero());
        }
        if *s == BigUint::from(2u8) {
            return Ok(Rational::one());
        }
        let t = s - 2u8;
        let (a, b) = calkin_wilf_node(&t);
        let sum = &a + &b;
        Rational::new(BigInt::from(a), BigInt::from(sum))
    }

    /// Index `s` with `b_s = q`, for `q ∈ [0, 1]`.
    pub fn position(&self, q: &Rational) -> Result<BigUint> {
        if q.is_zero() {
            return Ok(BigUint::one());
        }
        if *q == Rational::one() {
            return Ok(BigUint::from(2u8));
        }
        if q.numer().is_negative() || *q > Rational::one() {
            return Err(Error::Validation(format!("{q} is outside [0, 1]")));
        }
        let a = q.numer().magnitude().clone();
        let b = q.denom().magnitude().clone();
        let parent_denom = &b - &a;
        Ok(calkin_wilf_index(a, parent_denom) + 2u8)
    }

    /// The term of least index lying strictly between `lo` and `hi`.
    ///
    /// This is the simplest rational in the interval (least Stern–Brocot
    /// depth), found by the continued-fraction recursion.
    pub fn first_in_open_interval(&self, lo: &Rational, hi: &Rational) -> Result<(BigUint, Rational)> {
        if lo.numer().is_negative() || *hi > Rational::one() || lo >= hi {
            return Err(Error::Validation(format!("({lo}, {hi}) is not a nonempty subinterval of [0, 1]")));
        }
        let q = simplest_between(lo, Some(hi));
        let s = self.position(&q)?;
        Ok((s, q))
    }

    /// Terms `b₁, b₂, ...` in order.
    pub fn iter(&self) -> impl Iterator<Item = Rational> {
        let e = *self;
        (1u64..).map(move |s| e.term(&BigUint::from(s)).expect("s >= 1"))
    }
}

/// Node `a/b` at breadth-first index `t ≥ 1` of the Calkin–Wilf tree.
fn calkin_wilf_node(t: &BigUint) -> (BigUint, BigUint) {
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    let bits = t.bits();
    for i in (0..bits.saturating_sub(1)).rev() {
        if t.bit(i) {
            a = &a + &b;
        } else {
            b = &a + &b;
        }
    }
    (a, b)
}

/// Breadth-first index of the node `a/b` (coprime, positive).
fn calkin_wilf_index(mut a: BigUint, mut b: BigUint) -> BigUint {
    // Runs of identical moves, collected leaf to root.
    let mut runs: Vec<(bool, BigUint)> = Vec::new();
    while !(a.is_one() && b.is_one()) {
        if a < b {
            let k = (&b - 1u8) / &a;
            b -= &a * &k;
            runs.push((false, k));
        } else {
            let k = (&a - 1u8) / &b;
            a -= &b * &k;
            runs.push((true, k));
        }
    }
    let mut idx = BigUint::one();
    for (right, k) in runs.into_iter().rev() {
        let k = usize::try_from(&k).expect("path length fits in memory");
        idx <<= k;
        if right {
            idx += (BigUint::one() << k) - 1u8;
        }
    }
    idx
}

/// Simplest rational in `(lo, hi)` for `0 ≤ lo < hi`, `hi = None` meaning `+∞`.
fn simplest_between(lo: &Rational, hi: Option<&Rational>) -> Rational {
    let fl = lo.floor();
    let next = Rational::integer(&fl + 1);
    if hi.is_none_or(|h| next < *h) {
        return next;
    }
    let hi = hi.expect("bounded");
    let base = Rational::integer(fl);
    let lo_frac = lo - &base;
    let hi_frac = hi - &base;
    let inner_hi = (!lo_frac.is_zero()).then(|| lo_frac.recip());
    let inner = simplest_between(&hi_frac.recip(), inner_hi.as_ref());
    &base + &inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn leading_terms() {
        let got: Vec<String> = RationalEnumeration.iter().take(9).map(|q| q.to_string()).collect();
        assert_eq!(got, ["0", "1", "1/2", "1/3", "2/3", "1/4", "3/5", "2/5", "3/4"]);
    }

    #[test]
    fn position_inverts_term() {
        let e = RationalEnumeration;
        for s in 1u32..2000 {
            let s = BigUint::from(s);
            assert_eq!(e.position(&e.term(&s).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn first_in_interval_small_cases() {
        let e = RationalEnumeration;
        assert_eq!(e.first_in_open_interval(&r("0"), &r("1")).unwrap().1, r("1/2"));
        assert_eq!(e.first_in_open_interval(&r("1/2"), &r("1")).unwrap().1, r("2/3"));
        assert_eq!(e.first_in_open_interval(&r("0"), &r("1/2")).unwrap().1, r("1/3"));
        assert_eq!(e.first_in_open_interval(&r("1/3"), &r("1/2")).unwrap().1, r("2/5"));
        assert!(e.first_in_open_interval(&r("1/2"), &r("1/2")).is_err());
    }

    #[test]
    fn deep_interval_is_fast() {
        let e = RationalEnumeration;
        let lo = Rational::new(1, 1000i64).unwrap();
        let hi = Rational::new(1, 999i64).unwrap();
        let (s, q) = e.first_in_open_interval(&lo, &hi).unwrap();
        assert!(lo < q && q < hi);
        assert_eq!(e.term(&s).unwrap(), q);
    }
}

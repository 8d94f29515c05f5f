use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
///
/// Displays as `p/q`, or `p` when the denominator is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let d: BigInt = denom.into();
        if d.is_zero() {
            return Err(Error::Validation("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer.into(), d)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $f(self, rhs: Rational) -> Rational {
                Rational(self.0.$f(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $f(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$f(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(format!("rational `{s}`"), "expected `p` or `p/q`");
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        Rational::new(p, q).map_err(|_| bad())
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_displayed() {
        let r = Rational::new(4, -6).unwrap();
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(Rational::new(6, 3).unwrap().to_string(), "2");
        assert_eq!("3/9".parse::<Rational>().unwrap(), Rational::new(1, 3).unwrap());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn order_is_numeric() {
        let a: Rational = "1/3".parse().unwrap();
        let b: Rational = "1/2".parse().unwrap();
        assert!(a < b);
        assert!(-b.clone() < a);
        assert_eq!(&a + &b, "5/6".parse().unwrap());
    }
}

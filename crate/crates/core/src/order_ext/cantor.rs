use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::enumeration::RationalEnumeration;
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::structure::Loset;

/// Strictly increasing map from a finite loset into `[0, 1] ∩ ℚ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CantorEmbedding {
    /// Image of each element, by carrier index.
    pub values: Vec<Rational>,
    /// Enumeration index of each image.
    pub indices: Vec<BigUint>,
    /// Elements in the order they were placed: least, greatest, then carrier order.
    pub placement: Vec<usize>,
}

/// Places the least element at `0`, the greatest at `1`, and every other
/// element (in carrier order) at the earliest enumeration term strictly
/// between the images of its placed neighbours.
///
/// A one-element loset maps to `0`.
pub fn cantor_embed(loset: &Loset, target: &RationalEnumeration) -> Result<CantorEmbedding> {
    let n = loset.len();
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let least = loset.least();
    let greatest = loset.greatest();
    let mut placement = vec![least];
    if n > 1 {
        placement.push(greatest);
    }
    placement.extend((0..n).filter(|&x| x != least && x != greatest));

    let mut values = vec![Rational::zero(); n];
    let mut indices = vec![BigUint::from(1u8); n];
    // rank -> image of the placed element
    let mut placed: BTreeMap<usize, Rational> = BTreeMap::new();
    for (k, &x) in placement.iter().enumerate() {
        let (s, q) = match k {
            0 => (BigUint::from(1u8), Rational::zero()),
            1 => (BigUint::from(2u8), Rational::one()),
            _ => {
                let rank = loset.rank(x);
                let lo = placed.range(..rank).next_back().map(|(_, v)| v).expect("least is placed");
                let hi = placed.range(rank + 1..).next().map(|(_, v)| v).expect("greatest is placed");
                target.first_in_open_interval(lo, hi)?
            }
        };
        placed.insert(loset.rank(x), q.clone());
        values[x] = q;
        indices[x] = s;
    }
    let order = loset.order();
    if order.windows(2).any(|w| values[w[0]] >= values[w[1]]) {
        return Err(Error::invariant("embedding_strictly_increasing", format!("{values:?}")));
    }
    Ok(CantorEmbedding {
        values,
        indices,
        placement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Carrier;

    fn embed_chain(labels: &[&str]) -> Vec<String> {
        let l = Loset::chain(Carrier::new(labels.iter().copied()).unwrap());
        cantor_embed(&l, &RationalEnumeration)
            .unwrap()
            .values
            .iter()
            .map(|q| q.to_string())
            .collect()
    }

    #[test]
    fn worked_chains() {
        assert_eq!(embed_chain(&["a"]), ["0"]);
        assert_eq!(embed_chain(&["x", "y", "z"]), ["0", "1/2", "1"]);
        assert_eq!(embed_chain(&["x", "y", "z", "w"]), ["0", "1/2", "2/3", "1"]);
    }

    #[test]
    fn placement_order() {
        let c = Carrier::new(["p", "q", "r", "s"]).unwrap();
        let l = Loset::from_order(c, &[2, 0, 3, 1]).unwrap();
        let e = cantor_embed(&l, &RationalEnumeration).unwrap();
        assert_eq!(e.placement, vec![2, 1, 0, 3]);
    }
}

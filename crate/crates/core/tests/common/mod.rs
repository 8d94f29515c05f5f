//! Naive reference implementations used as test oracles. Everything here
//! works on plain boolean matrices and shares no code with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use ordbubble::{Carrier, Relation};

pub type Matrix = Vec<Vec<bool>>;

pub fn from_mask(n: usize, mask: u64) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| mask >> (i * n + j) & 1 == 1).collect())
        .collect()
}

pub fn to_matrix(r: &Relation) -> Matrix {
    let n = r.len();
    (0..n).map(|i| (0..n).map(|j| r.contains(i, j)).collect()).collect()
}

pub fn to_relation(m: &Matrix) -> Relation {
    let carrier = Carrier::canonical(m.len()).unwrap();
    Relation::from_fn(carrier, |i, j| m[i][j])
}

pub fn reflexive(m: &Matrix) -> bool {
    (0..m.len()).all(|i| m[i][i])
}

pub fn symmetric(m: &Matrix) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i]))
}

pub fn asymmetric(m: &Matrix) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| !(m[i][j] && m[j][i])))
}

pub fn transitive(m: &Matrix) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(m[i][j] && m[j][k]) || m[i][k])))
}

pub fn negatively_transitive(m: &Matrix) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !m[i][k] || m[i][j] || m[j][k])))
}

pub fn equivalence(m: &Matrix) -> bool {
    reflexive(m) && symmetric(m) && transitive(m)
}

pub fn preorder(m: &Matrix) -> bool {
    reflexive(m) && transitive(m)
}

pub fn disjoint(a: &Matrix, b: &Matrix) -> bool {
    let n = a.len();
    (0..n).all(|i| (0..n).all(|j| !(a[i][j] && b[i][j])))
}

/// `xEy ∧ yFz ⇒ xFz` and `xFy ∧ yEz ⇒ xFz`.
pub fn saturated(f: &Matrix, e: &Matrix) -> bool {
    let n = f.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| (!(e[x][y] && f[y][z]) || f[x][z]) && (!(f[x][y] && e[y][z]) || f[x][z]))
        })
    })
}

pub fn union(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| x || y).collect())
        .collect()
}

/// Pairs joined by a path of length `1..=n`.
pub fn path_closure(m: &Matrix) -> Matrix {
    let n = m.len();
    let mut out = vec![vec![false; n]; n];
    for s in 0..n {
        let mut frontier: Vec<usize> = (0..n).filter(|&t| m[s][t]).collect();
        for _ in 0..n {
            let mut next = Vec::new();
            for &t in &frontier {
                if !out[s][t] {
                    out[s][t] = true;
                    next.extend((0..n).filter(|&u| m[t][u]));
                }
            }
            frontier = next;
        }
    }
    out
}

/// All `(E, F)` with `E` an equivalence and `F` asymmetric, transitive,
/// disjoint from `E` and `E`-saturated, by scanning every pair of masks.
pub fn valid_pairs(n: usize) -> Vec<(Matrix, Matrix)> {
    let total = 1u64 << (n * n);
    let eqs: Vec<Matrix> = (0..total).map(|m| from_mask(n, m)).filter(equivalence).collect();
    let fs: Vec<Matrix> = (0..total)
        .map(|m| from_mask(n, m))
        .filter(|f| asymmetric(f) && transitive(f))
        .collect();
    let mut out = Vec::new();
    for e in &eqs {
        for f in &fs {
            if disjoint(e, f) && saturated(f, e) {
                out.push((e.clone(), f.clone()));
            }
        }
    }
    out
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// The Calkin–Wilf sequence of positive rationals by the Newman recurrence
/// `q ↦ 1 / (2⌊q⌋ - q + 1)`, starting at 1.
pub struct Newman(BigRational);

impl Newman {
    pub fn new() -> Self {
        Newman(BigRational::one())
    }
}

impl Iterator for Newman {
    type Item = BigRational;

    fn next(&mut self) -> Option<BigRational> {
        let q = self.0.clone();
        let two = BigRational::from_integer(BigInt::from(2));
        self.0 = (two * q.floor() - q.clone() + BigRational::one()).recip();
        Some(q)
    }
}

/// The enumeration of `[0, 1] ∩ ℚ`: 0, 1, then the Calkin–Wilf terms below 1
/// in order. Index 1-based.
pub fn unit_enumeration() -> impl Iterator<Item = (u64, BigRational)> {
    let head = [BigRational::zero(), BigRational::one()];
    head.into_iter()
        .chain(Newman::new().filter(|q| *q < BigRational::one()))
        .zip(1u64..)
        .map(|(q, s)| (s, q))
}

/// First enumeration term strictly between `lo` and `hi`, by linear scan.
pub fn scan_open_interval(lo: &BigRational, hi: &BigRational, limit: u64) -> Option<(u64, BigRational)> {
    unit_enumeration()
        .take(limit as usize)
        .find(|(_, q)| lo < q && q < hi)
}

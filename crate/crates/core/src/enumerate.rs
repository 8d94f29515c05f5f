//! Exhaustive and seeded random generators for relations, orders and bubble
//! systems. All enumerations use the canonical carrier `e0..e{n-1}`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::factor::EquivalenceRelation;
use crate::relation::{Carrier, Relation};
use crate::structure::{BubbleSpec, BubbleSystem, Loset};

fn check_size(n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyCarrier)
    } else if n > limit {
        Err(Error::TooLarge { size: n, limit })
    } else {
        Ok(())
    }
}

/// Every relation on `n ≤ 4` elements, in mask order (bit `i*n + j`).
pub fn all_relations(n: usize) -> Result<impl Iterator<Item = Relation>> {
    check_size(n, 4)?;
    let carrier = Carrier::canonical(n)?;
    Ok((0..1u64 << (n * n)).map(move |m| Relation::from_mask(carrier.clone(), m)))
}

/// Every reflexive relation on `n ≤ 5` elements.
pub fn reflexive_relations(n: usize) -> Result<impl Iterator<Item = Relation>> {
    check_size(n, 5)?;
    let carrier = Carrier::canonical(n)?;
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    Ok((0..1u64 << off.len()).map(move |m| {
        let mut r = Relation::diagonal(carrier.clone());
        for (k, &(i, j)) in off.iter().enumerate() {
            if m >> k & 1 == 1 {
                r.set(i, j);
            }
        }
        r
    }))
}

/// Every partial order on `n ≤ 5` elements: each unordered pair is
/// unrelated, ascending or descending, filtered by transitivity.
pub fn partial_orders(n: usize) -> Result<impl Iterator<Item = Relation>> {
    check_size(n, 5)?;
    let carrier = Carrier::canonical(n)?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let total = 3u64.pow(pairs.len() as u32);
    Ok((0..total)
        .map(move |mut code| {
            let mut r = Relation::diagonal(carrier.clone());
            for &(i, j) in &pairs {
                match code % 3 {
                    1 => r.set(i, j),
                    2 => r.set(j, i),
                    _ => {}
                }
                code /= 3;
            }
            r
        })
        .filter(|r| r.is_transitive()))
}

/// Every equivalence on `n ≤ 8` elements, via restricted growth strings.
pub fn equivalences(n: usize) -> Result<impl Iterator<Item = EquivalenceRelation>> {
    check_size(n, 8)?;
    let carrier = Carrier::canonical(n)?;
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let labels = rgs.clone();
        out.push(
            EquivalenceRelation::new(Relation::from_fn(carrier.clone(), |i, j| labels[i] == labels[j]))
                .expect("kernel of a map"),
        );
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(out.into_iter());
            }
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for v in &mut rgs[i + 1..] {
                    *v = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Every linear order on `n ≤ 8` elements, in lexicographic order of the
/// least-to-greatest listing.
pub fn linear_orders(n: usize) -> Result<impl Iterator<Item = Loset>> {
    check_size(n, 8)?;
    let carrier = Carrier::canonical(n)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![Loset::from_order(carrier.clone(), &perm)?];
    while next_permutation(&mut perm) {
        out.push(Loset::from_order(carrier.clone(), &perm)?);
    }
    Ok(out.into_iter())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Each ordered pair independently present with probability `density`.
pub fn random_relation<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<Relation> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let carrier = Carrier::canonical(n)?;
    Ok(Relation::from_fn(carrier, |_, _| rng.gen_bool(density)))
}

/// A random partial order: random comparabilities along a hidden linear
/// order, transitively closed.
pub fn random_partial_order<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<Relation> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let carrier = Carrier::canonical(n)?;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut rank = vec![0; n];
    for (k, &x) in perm.iter().enumerate() {
        rank[x] = k;
    }
    let r = Relation::from_fn(carrier, |i, j| i == j || (rank[i] < rank[j] && rng.gen_bool(density)));
    Ok(r.transitive_closure())
}

/// A random loset on `n` elements labelled `l0..` in a random carrier order.
pub fn random_loset<R: Rng>(rng: &mut R, n: usize) -> Result<Loset> {
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let mut labels: Vec<String> = (0..n).map(|i| format!("l{i}")).collect();
    labels.shuffle(rng);
    let carrier = Carrier::new(labels)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    Loset::from_order(carrier, &order)
}

/// A random bubble system with `1..=max_index` bubbles of size
/// `1..=max_bubble`, random inner equivalences and a shuffled carrier order.
pub fn random_bubble_system<R: Rng>(rng: &mut R, max_index: usize, max_bubble: usize) -> Result<BubbleSystem> {
    if max_index == 0 || max_bubble == 0 {
        return Err(Error::EmptyCarrier);
    }
    let m = rng.gen_range(1..=max_index);
    let sizes: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=max_bubble)).collect();
    let total: usize = sizes.iter().sum();
    let mut labels: Vec<String> = (0..total).map(|i| format!("x{i}")).collect();
    labels.shuffle(rng);
    let carrier: Arc<Carrier> = Carrier::new(labels.clone())?;
    let mut next = 0;
    let mut specs = Vec::with_capacity(m);
    for (k, &size) in sizes.iter().enumerate() {
        let elements: Vec<String> = labels[next..next + size].to_vec();
        next += size;
        let class: Vec<usize> = (0..size).map(|_| rng.gen_range(0..size)).collect();
        let mut inner_pairs = Vec::new();
        for (a, ea) in elements.iter().enumerate() {
            for (b, eb) in elements.iter().enumerate() {
                if class[a] == class[b] {
                    inner_pairs.push((ea.clone(), eb.clone()));
                }
            }
        }
        specs.push(BubbleSpec {
            label: format!("I{k}"),
            elements,
            inner_pairs,
        });
    }
    BubbleSystem::from_specs(Some(carrier), &specs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_relations(3).unwrap().count(), 512);
        assert_eq!(reflexive_relations(3).unwrap().count(), 64);
        let posets = [1, 3, 19, 219, 4231];
        for (n, &c) in posets.iter().enumerate() {
            assert_eq!(partial_orders(n + 1).unwrap().count(), c);
        }
        let bell = [1, 2, 5, 15, 52];
        for (n, &c) in bell.iter().enumerate() {
            assert_eq!(equivalences(n + 1).unwrap().count(), c);
        }
        assert_eq!(linear_orders(4).unwrap().count(), 24);
    }

    #[test]
    fn random_generators_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert!(random_partial_order(&mut rng, 6, 0.4).unwrap().is_partial_order());
            let sys = random_bubble_system(&mut rng, 5, 3).unwrap();
            assert!(sys.carrier().len() <= 15);
            assert!(random_loset(&mut rng, 7).unwrap().relation().is_linear_order());
        }
    }
}

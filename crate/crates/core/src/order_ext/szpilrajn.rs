use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::structure::Loset;

fn require_partial_order(r: &Relation) -> Result<()> {
    match r.partial_order_violation() {
        Some(w) => Err(Error::NotAPartialOrder(r.carrier().witness(&w))),
        None => Ok(()),
    }
}

/// Extends a partial order by placing `a` below `b`:
/// `R ∪ {(x, y) : xRa ∧ bRy}`.
pub fn szpilrajn_step(r: &Relation, a: usize, b: usize) -> Result<Relation> {
    require_partial_order(r)?;
    if r.contains(a, b) || r.contains(b, a) {
        let c = r.carrier();
        return Err(Error::AlreadyComparable(c.label(a).to_string(), c.label(b).to_string()));
    }
    let below_a: Vec<usize> = (0..r.len()).filter(|&x| r.contains(x, a)).collect();
    let mut out = r.clone();
    for &x in &below_a {
        for y in r.successors(b) {
            out.set(x, y);
        }
    }
    if !out.is_partial_order() || !out.contains(a, b) || !r.is_subset(&out)? {
        return Err(Error::invariant("extension_step_is_partial_order", format!("{out:?}")));
    }
    Ok(out)
}

/// Linear order containing `r`, built by repeatedly ordering the
/// lexicographically least incomparable pair `(i, j)`, `i < j`, as `i` below `j`.
pub fn szpilrajn_extend(r: &Relation) -> Result<Loset> {
    require_partial_order(r)?;
    let n = r.len();
    let mut cur = r.clone();
    // pairs before the last one adjoined stay comparable, so the scan resumes there
    let mut start = 0;
    loop {
        let next = (start..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !cur.contains(i, j) && !cur.contains(j, i));
        let Some((i, j)) = next else { break };
        cur = szpilrajn_step(&cur, i, j)?;
        start = i;
    }
    let loset = Loset::from_relation(&cur)
        .map_err(|e| Error::invariant("extension_is_linear", e.to_string()))?;
    Ok(loset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::Carrier;

    #[test]
    fn step_on_antichain() {
        let c = Carrier::new(["a", "b"]).unwrap();
        let d = Relation::diagonal(c.clone());
        let out = szpilrajn_step(&d, 0, 1).unwrap();
        assert_eq!(out.count(), 3);
        assert!(out.contains(0, 1));
        assert!(matches!(szpilrajn_step(&out, 0, 1), Err(Error::AlreadyComparable(..))));
    }

    #[test]
    fn step_propagates_along_chain() {
        let c = Carrier::new(["a", "b", "c"]).unwrap();
        let r = Relation::diagonal(c.clone())
            .union(&Relation::from_pairs(c.clone(), &[("a", "b")]).unwrap())
            .unwrap();
        let out = szpilrajn_step(&r, 2, 0).unwrap();
        assert_eq!(
            out.difference(&r).unwrap().label_pairs(),
            vec![("c".to_string(), "a".to_string()), ("c".to_string(), "b".to_string())]
        );
    }

    #[test]
    fn antichain_extends_in_carrier_order() {
        let c = Carrier::new(["a", "b", "c"]).unwrap();
        let l = szpilrajn_extend(&Relation::diagonal(c)).unwrap();
        assert_eq!(l.ordered_labels(), vec!["a", "b", "c"]);
    }

    #[test]
    fn rejects_non_partial_order() {
        let c = Carrier::new(["a", "b"]).unwrap();
        assert!(matches!(szpilrajn_extend(&Relation::full(c)), Err(Error::NotAPartialOrder(_))));
    }
}

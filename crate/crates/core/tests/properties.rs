use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ordbubble::enumerate::{random_bubble_system, random_loset};
use ordbubble::format::{bubble_json, matrix_string, parse_bubble_json, parse_matrix, parse_relation_json, relation_json};
use ordbubble::invariants::{all_hold, Battery};
use ordbubble::order_ext::{cantor_embed, h_map, szpilrajn_extend, system_utility, utility_conditions};
use ordbubble::structure::{bubble_compose, bubble_decompose, decompose, join_pair, split_preorder};
use ordbubble::topology::{projection_check, utility_continuity};
use ordbubble::{Carrier, Decomposition, Rational, RationalEnumeration, Relation};

fn relation() -> impl Strategy<Value = Relation> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(any::<bool>(), n * n)))
        .prop_map(|(n, bits)| Relation::from_fn(Carrier::canonical(n).unwrap(), |i, j| bits[i * n + j]))
}

fn preorder() -> impl Strategy<Value = Relation> {
    relation().prop_map(|r| {
        r.union(&Relation::diagonal(r.carrier().clone()))
            .unwrap()
            .transitive_closure()
    })
}

/// Closure of a random relation restricted to a hidden linear order.
fn partial_order() -> impl Strategy<Value = Relation> {
    (relation(), any::<u64>()).prop_map(|(r, seed)| {
        let n = r.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_loset(&mut rng, n).unwrap();
        Relation::from_fn(r.carrier().clone(), |i, j| i == j || (r.contains(i, j) && l.rank(i) < l.rank(j)))
            .transitive_closure()
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..=10_000, 1i64..=500).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

proptest! {
    #[test]
    fn battery_holds_on_random_relations(r in relation(), p in preorder()) {
        let battery = Battery::default();
        prop_assert!(all_hold(&battery.relation_checks(&r)));
        prop_assert!(all_hold(&battery.preorder_checks(&p)));
    }

    #[test]
    fn closure_is_least_transitive_superset(r in relation()) {
        let c = r.transitive_closure();
        prop_assert!(c.is_transitive());
        prop_assert!(r.is_subset(&c).unwrap());
        prop_assert_eq!(c.transitive_closure(), c);
    }

    #[test]
    fn derived_parts_partition_all_pairs(r in relation()) {
        let sym = r.symmetric_part();
        let asym = r.asymmetric_part();
        let inc = r.incomparability();
        let pieces = [sym.clone(), asym.clone(), asym.inverse(), inc.clone()];
        let mut cover = Relation::empty(r.carrier().clone());
        for (a, p) in pieces.iter().enumerate() {
            for q in &pieces[a + 1..] {
                prop_assert!(p.is_disjoint(q).unwrap());
            }
            cover = cover.union(p).unwrap();
        }
        prop_assert_eq!(cover, Relation::full(r.carrier().clone()));
        prop_assert!(asym.is_asymmetric());
        prop_assert!(inc.is_symmetric());
    }

    #[test]
    fn split_and_join_are_inverse(p in preorder()) {
        let s = split_preorder(&p).unwrap();
        prop_assert!(s.strict.is_asymmetric() && s.strict.is_transitive());
        prop_assert_eq!(join_pair(&s.equivalence, &s.strict).unwrap(), p);
    }

    #[test]
    fn decomposable_preorders_round_trip(p in preorder()) {
        match decompose(&p).unwrap() {
            Decomposition::Bubbles(sys) => {
                prop_assert!(p.asymmetric_part().is_negatively_transitive());
                prop_assert_eq!(bubble_compose(&sys).unwrap(), p);
            }
            Decomposition::Fallback { factor, .. } => {
                prop_assert!(!p.asymmetric_part().is_negatively_transitive());
                prop_assert!(factor.order.relation().is_linear_order());
                // blocks respect the strict order wherever both ends are in different blocks
                let f = p.asymmetric_part();
                for (x, y) in f.pairs() {
                    let (bx, by) = (factor.partition.block_of(x), factor.partition.block_of(y));
                    if bx != by {
                        prop_assert!(factor.order.rank(bx) < factor.order.rank(by));
                    }
                }
            }
        }
    }

    #[test]
    fn szpilrajn_extends(p in partial_order()) {
        let l = szpilrajn_extend(&p).unwrap().relation();
        prop_assert!(l.is_linear_order());
        prop_assert!(p.is_subset(&l).unwrap());
    }

    #[test]
    fn system_round_trip_and_utility(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_bubble_system(&mut rng, 5, 3).unwrap();
        let r = bubble_compose(&sys).unwrap();
        prop_assert!(bubble_decompose(&r).unwrap().same_structure(&sys));
        let u = system_utility(&sys).unwrap();
        prop_assert!(all_hold(&utility_conditions(&r, &u)));
        prop_assert!(utility_continuity(&r, &u).unwrap().holds);
        prop_assert!(projection_check(&sys).unwrap().all_hold());
    }

    #[test]
    fn cantor_embedding_is_strictly_increasing(seed in any::<u64>(), n in 1usize..=30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_loset(&mut rng, n).unwrap();
        let emb = cantor_embed(&l, &RationalEnumeration).unwrap();
        for w in l.order().windows(2) {
            prop_assert!(emb.values[w[0]] < emb.values[w[1]]);
        }
        for (v, s) in emb.values.iter().zip(&emb.indices) {
            prop_assert_eq!(&RationalEnumeration.term(s).unwrap(), v);
        }
    }

    #[test]
    fn enumeration_position_inverts_term(s in 1u64..1_000_000) {
        let s = BigUint::from(s);
        let q = RationalEnumeration.term(&s).unwrap();
        prop_assert!(q >= Rational::zero() && q <= Rational::one());
        prop_assert_eq!(RationalEnumeration.position(&q).unwrap(), s);
    }

    #[test]
    fn first_term_in_interval_is_inside(a in 0i64..1000, b in 1i64..1000, d in 1i64..1000) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a + 1) };
        let den = d.max(hi);
        let lo = Rational::new(lo, den).unwrap();
        let hi = Rational::new(hi, den).unwrap();
        let (s, q) = RationalEnumeration.first_in_open_interval(&lo, &hi).unwrap();
        prop_assert!(lo < q && q < hi);
        prop_assert_eq!(RationalEnumeration.term(&s).unwrap(), q);
    }

    #[test]
    fn h_is_strictly_increasing_into_lower_half(a in rational(), b in rational()) {
        let (ha, hb) = (h_map(&a), h_map(&b));
        prop_assert_eq!(a < b, ha < hb);
        let half = Rational::new(1, 2).unwrap();
        prop_assert!(ha > Rational::zero() && ha < half);
    }

    #[test]
    fn relation_formats_round_trip(r in relation()) {
        let json = serde_json::to_string(&relation_json(&r)).unwrap();
        prop_assert_eq!(parse_relation_json(&json).unwrap(), r.clone());
        let parsed = parse_matrix(&matrix_string(&r)).unwrap();
        prop_assert_eq!(parsed.to_mask(), r.to_mask());
    }

    #[test]
    fn bubble_format_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_bubble_system(&mut rng, 4, 3).unwrap();
        let text = serde_json::to_string(&bubble_json(&sys)).unwrap();
        let back = parse_bubble_json(&text).unwrap();
        prop_assert!(back.same_structure(&sys));
        prop_assert_eq!(bubble_compose(&back).unwrap(), bubble_compose(&sys).unwrap());
    }
}

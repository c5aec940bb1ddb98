mod common;

use common::FIXTURES;
use num_bigint::BigInt;
use proptest::prelude::*;
use surfclust::cluster::Seed;
use surfclust::expansion::{expand_arc, expand_loop, expand_loop_at, ExpansionCache};
use surfclust::laurent::{Context, LaurentPoly};
use surfclust::matrix::ExchangeMatrix;
use surfclust::surface::family::{Family, Model};
use surfclust::surface::CurveWord;

fn poly(terms: Vec<(Vec<i32>, i64)>) -> LaurentPoly {
    let ctx = Context::new(["a", "b", "c"]);
    LaurentPoly::from_terms(&ctx, terms.into_iter().map(|(e, c)| (e, BigInt::from(c))))
}

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-3i32..4, 3), -5i64..6), 0..5).prop_map(poly)
}

fn arb_b(n: usize, extra: usize) -> impl Strategy<Value = ExchangeMatrix> {
    prop::collection::vec(-3i64..4, n * (n - 1) / 2 + extra * n).prop_map(move |v| {
        let mut b = ExchangeMatrix::zeros(n + extra, n);
        let mut it = v.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let x = it.next().unwrap();
                b.set(i, j, x);
                b.set(j, i, -x);
            }
        }
        for i in n..n + extra {
            for j in 0..n {
                b.set(i, j, it.next().unwrap());
            }
        }
        b
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPoly::one(a.ctx()), a.clone());
    }

    #[test]
    fn exact_division_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn tropical_evaluation_is_multiplicative_on_positive(a in arb_poly(), b in arb_poly()) {
        let pos = |p: &LaurentPoly| LaurentPoly::from_terms(p.ctx(), p.terms().map(|(e, c)| (e.clone(), c.magnitude().clone().into())));
        let (a, b) = (pos(&a), pos(&b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        let lhs = (&a * &b).tropical_eval().unwrap();
        let rhs = &a.tropical_eval().unwrap() * &b.tropical_eval().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_mutation_is_an_involution(b in arb_b(4, 2), k in 0usize..4) {
        let once = b.mutate(k).unwrap();
        prop_assert!(once.is_skew_symmetric_top());
        prop_assert_eq!(once.mutate(k).unwrap(), b);
    }

    #[test]
    fn seed_mutation_is_an_involution(f in 0usize..5, path in prop::collection::vec(0usize..4, 0..5), k in 0usize..4) {
        let m = Model::new(FIXTURES[f].1).unwrap();
        let s0 = Seed::principal(&m.triangulation().signed_adjacency()).unwrap();
        let n = s0.n();
        let path: Vec<usize> = path.into_iter().map(|p| p % n).collect();
        let s = s0.mutate_path(&path).unwrap();
        prop_assert_eq!(s.mutate(k % n).unwrap().mutate(k % n).unwrap(), s);
    }

    #[test]
    fn flips_match_matrix_mutation(f in 0usize..5, path in prop::collection::vec(0usize..4, 1..7)) {
        let mut t = Model::new(FIXTURES[f].1).unwrap().triangulation().clone();
        for p in path {
            let k = p % t.n();
            let (next, _) = t.flip(k).unwrap();
            prop_assert_eq!(next.signed_adjacency(), t.signed_adjacency().mutate(k).unwrap());
            t = next;
        }
    }
}

#[test]
fn reversal_and_rotation_invariance() {
    for (name, family) in FIXTURES {
        let m = Model::new(family).unwrap();
        let t = m.triangulation();
        for w in m.catalog(6).unwrap() {
            if w.is_closed() {
                let base = expand_loop(t, &w, 0, false).unwrap().laurent;
                assert_eq!(expand_loop(t, &w.reversed(), 0, false).unwrap().laurent, base, "{name} {w}");
                for r in 0..w.len() {
                    assert_eq!(expand_loop_at(t, &w.rotated(r), 0).unwrap().laurent, base, "{name} {w} at {r}");
                    assert_eq!(expand_loop_at(t, &w.rotated(r).reversed(), 0).unwrap().laurent, base, "{name} {w}");
                }
            } else {
                let a = expand_arc(t, &w, 0, false).unwrap().laurent;
                assert_eq!(expand_arc(t, &w.reversed(), 0, false).unwrap().laurent, a, "{name} {w}");
            }
        }
    }
}

#[test]
fn cache_returns_the_same_expansion() {
    let m = Model::new(Family::Annulus(2, 2)).unwrap();
    let t = m.triangulation();
    let cache = ExpansionCache::new();
    for w in m.catalog(6).unwrap() {
        let a = cache.expand(t, &w, 0, false).unwrap();
        let b = cache.expand(t, &w.reversed(), 0, false).unwrap();
        assert_eq!(a.laurent, b.laurent);
    }
    assert_eq!(cache.len(), m.catalog(6).unwrap().len());
    let z = m.core_loop().unwrap();
    assert!(matches!(z, CurveWord::Closed { .. }));
}

mod common;

use std::collections::BTreeSet;

use common::FIXTURES;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surfclust::bases::{
    enumerate_basis_elements, solve_exchange, verify_g_injectivity, verify_ptolemy, verify_ptolemy_in, BasisBound,
    Piece, Variant,
};
use surfclust::cluster::{separation_specialize, variable_by_mutation_path, Seed, SeparationMode};
use surfclust::expansion::{expand_arc, ExpansionCache};
use surfclust::laurent::{Context, LaurentPoly};
use surfclust::matrix::ExchangeMatrix;
use surfclust::surface::family::{Family, Model};

#[test]
fn ptolemy_on_every_fixture_arc() {
    for (name, family) in FIXTURES {
        let m = Model::new(family).unwrap();
        let t = m.triangulation();
        for k in 0..t.n() {
            let r = verify_ptolemy(t, k).unwrap();
            assert!(r.passed(), "{name}: {r:?}");
        }
    }
}

#[test]
fn ptolemy_on_nearby_triangulations() {
    for (family, depth) in [
        (Family::Polygon(4), 2),
        (Family::Polygon(5), 3),
        (Family::Polygon(6), 3),
        (Family::Annulus(1, 1), 3),
        (Family::Annulus(2, 2), 2),
    ] {
        let m = Model::new(family).unwrap();
        let cache = ExpansionCache::new();
        let sets = m.triangulations_within(depth).unwrap();
        assert!(sets.len() > 1);
        for (set, path) in &sets {
            for k in 0..set.chords().len() {
                let r = verify_ptolemy_in(&m, &cache, set, k).unwrap();
                assert!(r.passed(), "{family:?} after {path:?}: {r:?}");
            }
        }
    }
}

#[test]
fn exchange_solver_rejects_non_monomial_coefficients() {
    let ctx = Context::principal(1);
    let x = LaurentPoly::var(&ctx, 0);
    let y = LaurentPoly::var(&ctx, 1);
    let one = LaurentPoly::one(&ctx);
    let lhs = &(&y + &one) + &(&x * &x);
    assert!(solve_exchange(&lhs, &one, &(&x * &x)).is_empty());
    let lhs = &y + &(&x * &x);
    assert_eq!(solve_exchange(&lhs, &one, &(&x * &x)), vec![(y.clone(), one.clone())]);
}

fn full_rank_bottom(rng: &mut ChaCha8Rng, b: &ExchangeMatrix) -> ExchangeMatrix {
    loop {
        let bottom: Vec<Vec<i64>> = (0..2).map(|_| (0..b.cols()).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let full = b.extend_with(&bottom).unwrap();
        if full.rank() == b.cols() && bottom.iter().any(|r| r.iter().any(|&v| v != 0)) {
            return full;
        }
    }
}

#[test]
fn separation_agrees_with_mutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for family in [Family::Polygon(5), Family::Annulus(1, 1), Family::Polygon(6)] {
        let m = Model::new(family).unwrap();
        let t = m.triangulation();
        let b = t.signed_adjacency();
        let systems = [b.extend_principal().unwrap(), b.clone(), full_rank_bottom(&mut rng, &b)];
        for full in systems {
            if full.rank() < b.cols() {
                continue;
            }
            let seed = Seed::initial(full.clone(), Context::extended(full.rows())).unwrap();
            for (chord, w) in m.catalog_chords(5).unwrap() {
                let r = expand_arc(t, &w, 0, false).unwrap();
                let g = r.g.clone().unwrap();
                let a = separation_specialize(&r.laurent, &r.f_poly, &g, &full, SeparationMode::YSubstitution).unwrap();
                let b2 = separation_specialize(&r.laurent, &r.f_poly, &g, &full, SeparationMode::FHat).unwrap();
                assert_eq!(a, b2);
                let (path, slot) = m.realize(chord).unwrap();
                assert_eq!(a, variable_by_mutation_path(&seed, &path, slot).unwrap(), "{family:?} {w} in {full:?}");
            }
        }
    }
}

#[test]
fn pentagon_degree_one_elements() {
    let els =
        enumerate_basis_elements(Family::Polygon(5), BasisBound { degree: 1, word_len: 5, k: 0 }, Variant::B).unwrap();
    assert_eq!(els.len(), 6);
    assert!(els[0].pieces.is_empty());
    assert_eq!(els[0].laurent.to_string(), "1");
    let els2 =
        enumerate_basis_elements(Family::Polygon(5), BasisBound { degree: 2, word_len: 5, k: 0 }, Variant::BCirc)
            .unwrap();
    // 1, five arcs, five squares, five compatible pairs
    assert_eq!(els2.len(), 16);
    let b = Model::new(Family::Polygon(5)).unwrap().triangulation().signed_adjacency();
    assert!(verify_g_injectivity(&els2, &b).unwrap().passed());
}

#[test]
fn annulus_bracelets_appear_once() {
    let bound = BasisBound { degree: 2, word_len: 4, k: 3 };
    let b = Model::new(Family::Annulus(1, 1)).unwrap().triangulation().signed_adjacency();
    for variant in [Variant::B, Variant::BCirc] {
        let els = enumerate_basis_elements(Family::Annulus(1, 1), bound, variant).unwrap();
        let mut keys = BTreeSet::new();
        for e in &els {
            let loops = e.pieces.iter().filter(|p| matches!(p, Piece::Bracelet { .. } | Piece::Bangle { .. })).count();
            assert!(loops <= 1, "{:?}", e.pieces);
            assert!(keys.insert(e.pieces.clone()), "{:?}", e.pieces);
        }
        if variant == Variant::B {
            assert!(els.iter().any(|e| e.pieces.iter().any(|p| matches!(p, Piece::Bracelet { k: 2, .. }))));
        }
        let rep = verify_g_injectivity(&els, &b).unwrap();
        assert!(rep.passed(), "{variant:?}: {:?}", rep.collisions);
    }
}

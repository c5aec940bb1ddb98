//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

mod common;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::{abstract_shapes, brute_force_good_weights, check_band, check_snake, FIXTURES};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use surfclust::bases::{
    bracelet_word, cheb_combination_value, cheb_context, chebyshev_t, enumerate_basis_elements, monomial_to_chebyshev,
    verify_bracelet_chebyshev, verify_g_injectivity, verify_good_count_inequality, verify_ptolemy, verify_ptolemy_in,
    BasisBound, BasisElement, Variant,
};
use surfclust::cluster::{separation_specialize, variable_by_mutation_path, Seed, SeparationMode};
use surfclust::expansion::{expand_arc, expand_loop, verify_offsets, ExpansionCache, ExpansionResult};
use surfclust::laurent::{Context, GVector, LaurentPoly};
use surfclust::matrix::ExchangeMatrix;
use surfclust::snakegraph::{BandGraph, SnakeGraph};
use surfclust::surface::family::{Family, Model};
use surfclust::surface::{CurveSpec, CurveWord, Edge, Triangulation};

type Outcome = Result<String, String>;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

/// The fixture file and the family model it was written from, checked to coincide.
fn fixture(name: &str, family: Family) -> Result<(Model, Triangulation), String> {
    let text =
        std::fs::read_to_string(fixture_dir().join(format!("{name}.json"))).map_err(|e| format!("{name}: {e}"))?;
    let t = Triangulation::from_json(&text).map_err(|e| format!("{name}: {e}"))?;
    let m = Model::new(family).map_err(|e| e.to_string())?;
    if t.fingerprint() != m.triangulation().fingerprint() {
        return Err(format!("{name}: fixture differs from the {family:?} model"));
    }
    Ok((m, t))
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Parse `x^6 - 6x^4Y + 9x^2Y^2 - 2Y^3` into a polynomial in `x, Y`.
fn parse_cheb(text: &str) -> LaurentPoly {
    let ctx = cheb_context();
    let mut out = LaurentPoly::zero(&ctx);
    let spaced = text.replace(" - ", " + -");
    for raw in spaced.split(" + ") {
        let mut s = raw.trim();
        let mut sign = 1i64;
        if let Some(rest) = s.strip_prefix('-') {
            sign = -1;
            s = rest;
        }
        let digits: String = s.chars().take_while(|c| c.is_ascii_digit()).collect();
        let coeff: i64 = if digits.is_empty() { 1 } else { digits.parse().unwrap() };
        let mut exps = vec![0i32, 0];
        let mut chars = s[digits.len()..].chars().peekable();
        while let Some(v) = chars.next() {
            let slot = if v == 'x' { 0 } else { 1 };
            let mut e = 1;
            if chars.peek() == Some(&'^') {
                chars.next();
                e = chars.next().unwrap().to_digit(10).unwrap() as i32;
            }
            exps[slot] += e;
        }
        out = &out + &LaurentPoly::monomial(&ctx, exps, sign * coeff);
    }
    out
}

fn c1_chebyshev_table() -> Outcome {
    let table = [
        "2",
        "x",
        "x^2 - 2Y",
        "x^3 - 3xY",
        "x^4 - 4x^2Y + 2Y^2",
        "x^5 - 5x^3Y + 5xY^2",
        "x^6 - 6x^4Y + 9x^2Y^2 - 2Y^3",
    ];
    for (k, row) in table.iter().enumerate() {
        let got = chebyshev_t(k);
        check(got == parse_cheb(row), || format!("T_{k} = {got}, table has {row}"))?;
    }
    Ok("T_0..T_6 equal the table".into())
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn c2_monomials() -> Outcome {
    let ctx = cheb_context();
    for k in 1..=12usize {
        let terms = monomial_to_chebyshev(k);
        check(terms.len() == k / 2 + 1, || format!("k = {k}: {} summands", terms.len()))?;
        for (i, term) in terms.iter().enumerate() {
            let want_index = if 2 * i == k { None } else { Some(k - 2 * i) };
            check(
                term.coeff == BigInt::from(binom(k as u64, i as u64))
                    && term.y_power == i as u32
                    && term.index == want_index,
                || format!("k = {k}, summand {i}: {term:?}"),
            )?;
        }
        let back = cheb_combination_value(&terms);
        check(back == LaurentPoly::monomial(&ctx, vec![k as i32, 0], 1), || {
            format!("k = {k}: re-substitution gives {back}")
        })?;
    }
    Ok("x^k recovered exactly for k = 1..12".into())
}

fn mutation_matches(m: &Model, bound: usize) -> Result<usize, String> {
    let t = m.triangulation();
    let seed = Seed::principal(&t.signed_adjacency()).map_err(|e| e.to_string())?;
    let mut count = 0;
    for (chord, word) in m.catalog_chords(bound).map_err(|e| e.to_string())? {
        let (path, slot) = m.realize(chord).map_err(|e| e.to_string())?;
        let by_mutation = variable_by_mutation_path(&seed, &path, slot).map_err(|e| e.to_string())?;
        let by_matchings = expand_arc(t, &word, 0, false).map_err(|e| e.to_string())?.laurent;
        check(by_mutation == by_matchings, || format!("{:?} {word}: {by_matchings} vs {by_mutation}", m.family()))?;
        count += 1;
    }
    Ok(count)
}

fn c3_mutation_vs_matchings() -> Outcome {
    let mut total = 0;
    for n in 4..=8 {
        let m = Model::new(Family::Polygon(n)).map_err(|e| e.to_string())?;
        let got = mutation_matches(&m, usize::MAX)?;
        check(got == n * (n - 3) / 2, || format!("polygon({n}): {got} arcs"))?;
        total += got;
    }
    let (m, _) = fixture("annulus22", Family::Annulus(2, 2))?;
    let got = mutation_matches(&m, 6)?;
    check(got >= 10, || format!("annulus(2,2): only {got} arcs"))?;
    Ok(format!("{} arcs agree ({got} on annulus(2,2) with at most 6 crossings)", total + got))
}

fn exchange_binomial(s: &Seed, k: usize) -> LaurentPoly {
    let b = s.matrix();
    let ctx = s.ctx();
    let value = |i: usize| if i < s.n() { s.cluster()[i].clone() } else { LaurentPoly::var(ctx, i) };
    let mut pos = LaurentPoly::one(ctx);
    let mut neg = LaurentPoly::one(ctx);
    for i in 0..b.rows() {
        let e = b.get(i, k);
        if e > 0 {
            pos = &pos * &value(i).pow(e as u32);
        } else if e < 0 {
            neg = &neg * &value(i).pow((-e) as u32);
        }
    }
    &pos + &neg
}

fn c4_laurent_positivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut paths = 0;
    let mut steps = 0;
    for round in 0..25 {
        for (name, family) in FIXTURES {
            let (_, t) = fixture(name, family)?;
            let mut s = Seed::principal(&t.signed_adjacency()).map_err(|e| e.to_string())?;
            let len = rng.gen_range(1..=8);
            let mut prev = usize::MAX;
            for _ in 0..len {
                let mut k = rng.gen_range(0..s.n());
                if s.n() > 1 && k == prev {
                    k = (k + 1) % s.n();
                }
                prev = k;
                let next = s.mutate(k).map_err(|e| format!("{name} round {round}: {e}"))?;
                let lhs = &next.cluster()[k] * &s.cluster()[k];
                check(lhs == exchange_binomial(&s, k), || format!("{name} round {round}: exchange relation fails"))?;
                for x in next.cluster() {
                    check(x.all_coefficients_positive(), || format!("{name} round {round}: {x}"))?;
                }
                s = next;
                steps += 1;
            }
            paths += 1;
        }
    }
    Ok(format!("{paths} paths, {steps} exact exchanges, all coefficients positive"))
}

fn c5_lattices() -> Outcome {
    let shapes = abstract_shapes(6);
    for s in &shapes {
        let g = SnakeGraph::from_shape(s).map_err(|e| e.to_string())?;
        check_snake(&g, &format!("{s:?}"))?;
    }
    let mut on_fixtures = 0;
    for (name, family) in FIXTURES {
        let (m, t) = fixture(name, family)?;
        let words: Vec<CurveWord> =
            m.catalog_chords(6).map_err(|e| e.to_string())?.into_iter().map(|(_, w)| w).collect();
        if let Family::Annulus(..) = family {
            let z = m.core_loop().map_err(|e| e.to_string())?;
            for k in (1..).take_while(|k| k * z.len() <= 6) {
                let w = z.repeat(k);
                for r in 0..w.len() {
                    let band = BandGraph::build(&t, &w.rotated(r)).map_err(|e| e.to_string())?;
                    check_snake(band.snake(), &format!("{name} cut {w}"))?;
                    on_fixtures += 1;
                }
            }
        }
        for w in words {
            if let CurveWord::Open { .. } = w {
                check_snake(&SnakeGraph::build(&t, &w).map_err(|e| e.to_string())?, &format!("{name} {w}"))?;
                on_fixtures += 1;
            }
        }
    }
    Ok(format!("{} abstract shapes and {on_fixtures} fixture snake graphs", shapes.len()))
}

fn c6_bands() -> Outcome {
    let mut bands = 0;
    for (name, family) in [("annulus11", Family::Annulus(1, 1)), ("annulus22", Family::Annulus(2, 2))] {
        let (m, t) = fixture(name, family)?;
        let z = m.core_loop().map_err(|e| e.to_string())?;
        for k in (1..).take_while(|k| k * z.len() <= 6) {
            let w = z.repeat(k);
            for r in 0..w.len() {
                let band = BandGraph::build(&t, &w.rotated(r)).map_err(|e| e.to_string())?;
                check_band(&band, t.n(), &format!("{name} {} at {r}", w))?;
                bands += 1;
            }
        }
    }
    Ok(format!("{bands} band graphs: good matchings = order ideals = quotient-graph oracle"))
}

fn c7_bracelets() -> Outcome {
    let mut n = 0;
    for (name, family) in [("annulus11", Family::Annulus(1, 1)), ("annulus22", Family::Annulus(2, 2))] {
        let (m, t) = fixture(name, family)?;
        let z = m.core_loop().map_err(|e| e.to_string())?;
        for k in 1..=3 {
            let r = verify_bracelet_chebyshev(&t, &z, k).map_err(|e| e.to_string())?;
            check(r.equal, || format!("{name} k = {k}: {} vs {}", r.bracelet, r.chebyshev))?;
            n += 1;
        }
        if name == "annulus11" {
            let xz = expand_loop(&t, &z, 0, false).map_err(|e| e.to_string())?.laurent;
            let brac2 = expand_loop(&t, &bracelet_word(&z, 2).map_err(|e| e.to_string())?, 0, false)
                .map_err(|e| e.to_string())?
                .laurent;
            let ctx = Context::principal(2);
            let want = &(&xz * &xz) - &LaurentPoly::monomial(&ctx, vec![0, 0, 1, 1], 2);
            check(brac2 == want, || format!("Brac_2 = {brac2}"))?;
        }
    }
    Ok(format!("{n} bracelet identities hold"))
}

fn c8_counts() -> Outcome {
    let mut summary = Vec::new();
    for (name, family) in [("annulus11", Family::Annulus(1, 1)), ("annulus22", Family::Annulus(2, 2))] {
        let (m, t) = fixture(name, family)?;
        let z = m.core_loop().map_err(|e| e.to_string())?;
        let r = verify_good_count_inequality(&t, &z, 3).map_err(|e| e.to_string())?;
        check(r.passed(), || format!("{name}: {r:?}"))?;
        for k in 1..r.counts.len() {
            let w = z.repeat(k);
            if w.len() > 8 {
                break;
            }
            let band = BandGraph::build(&t, &w).map_err(|e| e.to_string())?;
            let brute = brute_force_good_weights(&band, t.n()).len();
            check(brute == r.counts[k], || format!("{name} k = {k}: {} good, oracle {brute}", r.counts[k]))?;
        }
        if name == "annulus11" {
            check(r.counts[1] == 3 && r.counts[2] == 7, || format!("{name}: {:?}", r.counts))?;
        }
        summary.push(format!("{name} {:?}", r.counts));
    }
    Ok(summary.join(", "))
}

fn c9_ptolemy() -> Outcome {
    let mut n = 0;
    for (name, family) in FIXTURES {
        let (m, t) = fixture(name, family)?;
        for k in 0..t.n() {
            let r = verify_ptolemy(&t, k).map_err(|e| format!("{name}: {e}"))?;
            check(r.passed(), || format!("{name}: {r:?}"))?;
            n += 1;
        }
        let cache = ExpansionCache::new();
        for (set, path) in m.triangulations_within(2).map_err(|e| e.to_string())? {
            for k in 0..set.chords().len() {
                let r = verify_ptolemy_in(&m, &cache, &set, k).map_err(|e| format!("{name} after {path:?}: {e}"))?;
                check(r.passed(), || format!("{name} after {path:?}: {r:?}"))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} flips, each with a unique solution and exactly one trivial coefficient"))
}

fn products_up_to_three(els: &[BasisElement], bt: &ExchangeMatrix) -> Result<usize, String> {
    let mut n = 0;
    for i in 0..els.len() {
        for j in i..els.len() {
            let ij = &els[i].laurent * &els[j].laurent;
            let r = verify_offsets(&ij, bt);
            check(r.passed(), || format!("{:?} * {:?}: {:?}", els[i].pieces, els[j].pieces, r.failures))?;
            n += 1;
            for k in j..els.len() {
                let r = verify_offsets(&(&ij * &els[k].laurent), bt);
                check(r.passed(), || format!("triple {i} {j} {k}: {:?}", r.failures))?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn c10_leading_terms() -> Outcome {
    let mut expansions = 0;
    for (name, family) in FIXTURES {
        let (m, t) = fixture(name, family)?;
        let bt = t.signed_adjacency().extend_principal().map_err(|e| e.to_string())?;
        let mut words = m.catalog(6).map_err(|e| e.to_string())?;
        if let Family::Annulus(..) = family {
            let z = m.core_loop().map_err(|e| e.to_string())?;
            words.extend((2..=3).map(|k| bracelet_word(&z, k).unwrap()));
        }
        for w in words {
            let r = if w.is_closed() { expand_loop(&t, &w, 0, false) } else { expand_arc(&t, &w, 0, false) };
            let r = r.map_err(|e| format!("{name} {w}: {e}"))?;
            let off = verify_offsets(&r.laurent, &bt);
            check(off.passed(), || format!("{name} {w}: {:?}", off.failures))?;
            expansions += 1;
        }
    }
    let mut products = 0;
    for (family, bound, variants) in [
        (Family::Polygon(5), BasisBound { degree: 2, word_len: 5, k: 0 }, &[Variant::B][..]),
        (Family::Annulus(1, 1), BasisBound { degree: 2, word_len: 4, k: 2 }, &[Variant::B, Variant::BCirc][..]),
    ] {
        let bt = Model::new(family)
            .map_err(|e| e.to_string())?
            .triangulation()
            .signed_adjacency()
            .extend_principal()
            .unwrap();
        for &v in variants {
            let els = enumerate_basis_elements(family, bound, v).map_err(|e| e.to_string())?;
            products += products_up_to_three(&els, &bt)?;
        }
    }
    Ok(format!("{expansions} expansions and {products} products of basis elements"))
}

fn g_of(r: &ExpansionResult) -> Result<GVector, String> {
    r.g.clone().ok_or_else(|| "no g-vector".to_string())
}

fn c11_g_vectors() -> Outcome {
    for (name, family) in FIXTURES {
        let (_, t) = fixture(name, family)?;
        for i in 0..t.n() {
            let r = expand_arc(&t, &CurveWord::Segment(Edge::Arc(i)), 0, false).map_err(|e| e.to_string())?;
            check(g_of(&r)? == GVector::unit(t.n(), i), || format!("{name}: g of arc {i}"))?;
        }
    }
    let (_, hex) = fixture("hexagon", Family::Polygon(6))?;
    let text =
        std::fs::read_to_string(fixture_dir().join("curves/hexagon_anti_arcs.json")).map_err(|e| e.to_string())?;
    let anti: Vec<serde_json::Value> = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    check(anti.len() == hex.n(), || "one anti-arc per arc".into())?;
    for entry in &anti {
        let arc = entry["arc"].as_str().ok_or("arc name")?;
        let Some(Edge::Arc(i)) = hex.edge_by_name(arc) else {
            return Err(format!("unknown arc {arc}"));
        };
        let spec: CurveSpec = serde_json::from_value(entry["curve"].clone()).map_err(|e| e.to_string())?;
        let w = hex.curve_from_spec(&spec).map_err(|e| e.to_string())?;
        let r = expand_arc(&hex, &w, 0, false).map_err(|e| e.to_string())?;
        let g = g_of(&r)?;
        check(g == GVector::unit(hex.n(), i).scale(-1), || format!("anti-arc of {arc}: g = {g:?}"))?;
    }
    for (name, family) in [("annulus11", Family::Annulus(1, 1)), ("annulus22", Family::Annulus(2, 2))] {
        let (m, t) = fixture(name, family)?;
        let z = m.core_loop().map_err(|e| e.to_string())?;
        let base = expand_loop(&t, &z, 0, false).map_err(|e| e.to_string())?;
        let gz = g_of(&base)?;
        let b = t.signed_adjacency();
        for k in 1..=3usize {
            let brac = expand_loop(&t, &bracelet_word(&z, k).unwrap(), 0, false).map_err(|e| e.to_string())?;
            let bang = base.laurent.pow(k as u32);
            let g_bang = surfclust::laurent::is_g_homogeneous(&bang, &b).ok_or("bangle is not homogeneous")?;
            check(g_of(&brac)? == gz.scale(k as i64) && g_bang == gz.scale(k as i64), || {
                format!("{name} k = {k}: bracelet {:?}, bangle {g_bang:?}, loop {gz:?}", brac.g)
            })?;
        }
    }
    let b = Model::new(Family::Annulus(1, 1)).unwrap().triangulation().signed_adjacency();
    let bound = BasisBound { degree: 2, word_len: 4, k: 3 };
    let mut sizes = Vec::new();
    for v in [Variant::BCirc, Variant::B] {
        let els = enumerate_basis_elements(Family::Annulus(1, 1), bound, v).map_err(|e| e.to_string())?;
        let r = verify_g_injectivity(&els, &b).map_err(|e| e.to_string())?;
        check(r.passed(), || format!("{v:?}: collisions {:?}", r.collisions))?;
        let distinct: BTreeSet<&GVector> = els.iter().map(|e| &e.g).collect();
        check(distinct.len() == els.len(), || format!("{v:?}: repeated g-vector"))?;
        sizes.push(els.len());
    }
    Ok(format!("initial arcs, 3 anti-arcs, bracelets/bangles k = 1..3, {sizes:?} basis elements with distinct g"))
}

fn coefficient_systems(b: &ExchangeMatrix, rng: &mut ChaCha8Rng) -> Vec<ExchangeMatrix> {
    let random = loop {
        let bottom: Vec<Vec<i64>> = (0..2).map(|_| (0..b.cols()).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let full = b.extend_with(&bottom).unwrap();
        if full.rank() == b.cols() {
            break full;
        }
    };
    vec![b.extend_principal().unwrap(), b.clone(), random]
}

fn c12_separation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut n = 0;
    for (name, family) in [("pentagon", Family::Polygon(5)), ("annulus11", Family::Annulus(1, 1))] {
        let (m, t) = fixture(name, family)?;
        let b = t.signed_adjacency();
        for full in coefficient_systems(&b, &mut rng) {
            check(full.rank() == b.cols(), || format!("{name}: rank deficient {full:?}"))?;
            let seed = Seed::initial(full.clone(), Context::extended(full.rows())).map_err(|e| e.to_string())?;
            for (chord, w) in m.catalog_chords(6).map_err(|e| e.to_string())? {
                let r = expand_arc(&t, &w, 0, false).map_err(|e| e.to_string())?;
                let g = g_of(&r)?;
                let a = separation_specialize(&r.laurent, &r.f_poly, &g, &full, SeparationMode::YSubstitution)
                    .map_err(|e| format!("{name} {w}: {e}"))?;
                let fhat = separation_specialize(&r.laurent, &r.f_poly, &g, &full, SeparationMode::FHat)
                    .map_err(|e| format!("{name} {w}: {e}"))?;
                check(a == fhat, || format!("{name} {w}: modes differ"))?;
                let (path, slot) = m.realize(chord).map_err(|e| e.to_string())?;
                let direct = variable_by_mutation_path(&seed, &path, slot).map_err(|e| e.to_string())?;
                check(a == direct, || format!("{name} {w}: {a} but mutation gives {direct}"))?;
                n += 1;
            }
            if let Family::Annulus(..) = family {
                let z = m.core_loop().map_err(|e| e.to_string())?;
                for k in 1..=3 {
                    let r = expand_loop(&t, &bracelet_word(&z, k).unwrap(), 0, false).map_err(|e| e.to_string())?;
                    let g = g_of(&r)?;
                    let a = separation_specialize(&r.laurent, &r.f_poly, &g, &full, SeparationMode::YSubstitution);
                    let fhat = separation_specialize(&r.laurent, &r.f_poly, &g, &full, SeparationMode::FHat);
                    check(a.is_ok() && a == fhat, || format!("{name} Brac_{k}: {a:?} vs {fhat:?}"))?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} specializations agree in both forms (arcs also match mutation)"))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Outcome); 12] = [
        ("Chebyshev table", Duration::from_secs(1), c1_chebyshev_table),
        ("monomial to Chebyshev", Duration::from_secs(1), c2_monomials),
        ("mutation equals matchings", Duration::from_secs(60), c3_mutation_vs_matchings),
        ("Laurent phenomenon and positivity", Duration::from_secs(120), c4_laurent_positivity),
        ("snake lattice structure", Duration::from_secs(120), c5_lattices),
        ("band lattice", Duration::from_secs(60), c6_bands),
        ("bracelet Chebyshev identity", Duration::from_secs(60), c7_bracelets),
        ("good-count recurrence", Duration::from_secs(30), c8_counts),
        ("Ptolemy flip relations", Duration::from_secs(60), c9_ptolemy),
        ("leading-term structure", Duration::from_secs(120), c10_leading_terms),
        ("g-vector facts", Duration::from_secs(60), c11_g_vectors),
        ("separation formula", Duration::from_secs(30), c12_separation),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {took:.2?}, limit {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {status} [{took:.2?}] {name}: {detail}", i + 1);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

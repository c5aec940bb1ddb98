//! `verify <suite>`: independent checks run in a bounded pool, merged in sorted order.

use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use surfclust::bases::{
    cheb_combination_value, cheb_context, chebyshev_identity_holds, enumerate_basis_elements, monomial_to_chebyshev,
    verify_bracelet_chebyshev, verify_g_injectivity, verify_good_count_inequality, verify_ptolemy, verify_ptolemy_in,
    BasisBound, Variant,
};
use surfclust::cluster::Seed;
use surfclust::expansion::{expand_arc, ExpansionCache};
use surfclust::laurent::{GVector, LaurentPoly};
use surfclust::snakegraph::{BandGraph, Glue, SnakeGraph};
use surfclust::surface::family::Family;
use surfclust::surface::{CurveWord, Edge, Triangulation};

use crate::commands::word_text;
use crate::session::{family_model, invalid, CliError, Session};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Ptolemy,
    Chebyshev,
    Counts,
    GInjectivity,
    LatticeParity,
    /// Random mutation paths: exact exchanges and positive coefficients.
    Laurent,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub check: String,
    pub instance: String,
    pub status: &'static str,
    pub witness: Value,
}

fn check(name: &str, instance: impl Into<String>, ok: bool, witness: Value) -> Check {
    Check { check: name.into(), instance: instance.into(), status: if ok { "pass" } else { "fail" }, witness }
}

fn error_check(name: &str, instance: impl Into<String>, e: impl std::fmt::Display) -> Check {
    check(name, instance, false, json!({ "error": e.to_string() }))
}

#[derive(Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub status: &'static str,
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

pub struct Options {
    pub k: usize,
    pub bound: usize,
    pub degree: usize,
    pub depth: usize,
    pub max_tiles: usize,
    pub paths: usize,
    pub length: usize,
    pub curve: Option<std::path::PathBuf>,
}

pub fn run(s: &Session, suite: Suite, o: &Options) -> Result<SuiteReport, CliError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(s.jobs.max(1)).build().map_err(invalid)?;
    let mut checks = match suite {
        Suite::Ptolemy => ptolemy(s, o, &pool)?,
        Suite::Chebyshev => chebyshev(s, o)?,
        Suite::Counts => counts(s, o)?,
        Suite::GInjectivity => g_injectivity(s, o, &pool)?,
        Suite::LatticeParity => lattice_parity(s, o, &pool)?,
        Suite::Laurent => laurent(s, o)?,
    };
    checks.sort_by(|a, b| (&a.check, &a.instance).cmp(&(&b.check, &b.instance)));
    let failed = checks.iter().filter(|c| c.status != "pass").count();
    Ok(SuiteReport { suite, status: if failed == 0 { "pass" } else { "fail" }, total: checks.len(), failed, checks })
}

fn ptolemy(s: &Session, o: &Options, pool: &rayon::ThreadPool) -> Result<Vec<Check>, CliError> {
    let t = s.surface()?;
    let mut out: Vec<Check> = (0..t.n())
        .map(|k| {
            let name = t.arc_names()[k].clone();
            match verify_ptolemy(&t, k) {
                Ok(r) => check("ptolemy", name, r.passed(), json!(r)),
                Err(e) => error_check("ptolemy", name, e),
            }
        })
        .collect();
    if o.depth > 0 {
        let m = family_model(&t)?;
        let sets = m.triangulations_within(o.depth).map_err(invalid)?;
        let cache = ExpansionCache::new();
        let jobs: Vec<(usize, usize)> =
            (0..sets.len()).flat_map(|i| (0..sets[i].0.chords().len()).map(move |k| (i, k))).collect();
        let more: Vec<Check> = pool.install(|| {
            jobs.par_iter()
                .map(|&(i, k)| {
                    let (set, path) = &sets[i];
                    let path1: Vec<usize> = path.iter().map(|p| p + 1).collect();
                    let inst = format!("flips {path1:?} slot {}", k + 1);
                    match verify_ptolemy_in(&m, &cache, set, k) {
                        Ok(r) => check("ptolemy-nearby", inst, r.passed(), json!(r)),
                        Err(e) => error_check("ptolemy-nearby", inst, e),
                    }
                })
                .collect()
        });
        out.extend(more);
    }
    Ok(out)
}

/// The loop under test: `--curve` if given, otherwise the core loop of an annulus surface.
fn essential_loop(s: &Session, t: &Triangulation, o: &Options) -> Result<CurveWord, CliError> {
    if let Some(p) = &o.curve {
        let w = s.curve(t, p)?;
        if !w.is_closed() {
            return Err(CliError::Validation("--curve must be a closed loop for this suite".into()));
        }
        return Ok(w);
    }
    match t.family() {
        Some(Family::Annulus(..)) => family_model(t)?.core_loop().map_err(invalid),
        _ => Err(CliError::Validation("surface has no essential loop; pass an annulus surface or --curve".into())),
    }
}

fn chebyshev(s: &Session, o: &Options) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    let ctx = cheb_context();
    for k in 0..=o.k.max(1) {
        out.push(check("defining-identity", format!("T_{k}"), chebyshev_identity_holds(k), json!({ "k": k })));
        if k >= 1 {
            let back = cheb_combination_value(&monomial_to_chebyshev(k));
            let ok = back == LaurentPoly::monomial(&ctx, vec![k as i32, 0], 1);
            out.push(check("monomial-expansion", format!("x^{k}"), ok, json!({ "value": back.to_string() })));
        }
    }
    if let Some(t) = s.optional_surface()? {
        let w = essential_loop(s, &t, o)?;
        for k in 1..=o.k {
            let inst = format!("{} k={k}", word_text(&t, &w));
            out.push(match verify_bracelet_chebyshev(&t, &w, k) {
                Ok(r) => check("bracelet", inst, r.equal, json!(r)),
                Err(e) => error_check("bracelet", inst, e),
            });
        }
    }
    Ok(out)
}

fn counts(s: &Session, o: &Options) -> Result<Vec<Check>, CliError> {
    let t = s.surface()?;
    let w = essential_loop(s, &t, o)?;
    let r = verify_good_count_inequality(&t, &w, o.k.max(1)).map_err(invalid)?;
    let word = word_text(&t, &w);
    let mut out = Vec::new();
    for k in 1..=o.k.max(1) {
        let witness = json!({
            "good_k_minus_1": r.counts[k - 1],
            "good_1": r.counts[1],
            "good_k": r.counts[k],
            "good_k_plus_1": r.counts[k + 1],
            "good_0_convention": 2,
        });
        out.push(check("recurrence", format!("{word} k={k}"), r.recurrence[k - 1], witness.clone()));
        out.push(check("strict-inequality", format!("{word} k={k}"), r.strict[k - 1], witness));
    }
    Ok(out)
}

fn g_injectivity(s: &Session, o: &Options, pool: &rayon::ThreadPool) -> Result<Vec<Check>, CliError> {
    let t = s.surface()?;
    let m = family_model(&t)?;
    let n = t.n();
    let mut out = Vec::new();
    for i in 0..n {
        let r = expand_arc(&t, &CurveWord::Segment(Edge::Arc(i)), 0, false).map_err(invalid)?;
        let ok = r.g == Some(GVector::unit(n, i));
        out.push(check("initial-arc", t.arc_names()[i].clone(), ok, json!({ "g": r.g.map(|g| g.0) })));
    }
    if let Family::Polygon(_) = m.family() {
        for i in 0..n {
            let inst = format!("anti-{}", t.arc_names()[i]);
            let res = m
                .anti_arc(i)
                .map_err(|e| e.to_string())
                .and_then(|c| m.word_of(c).map_err(|e| e.to_string()))
                .and_then(|w| expand_arc(&t, &w, 0, false).map_err(|e| e.to_string()));
            out.push(match res {
                Ok(r) => {
                    let ok = r.g == Some(GVector::unit(n, i).scale(-1));
                    check("anti-arc", inst, ok, json!({ "curve": word_text(&t, &r.word), "g": r.g.map(|g| g.0) }))
                }
                Err(e) => error_check("anti-arc", inst, e),
            });
        }
    }
    let bound = BasisBound { degree: o.degree, word_len: o.bound, k: o.k };
    let b = t.signed_adjacency();
    let reports: Vec<Check> = pool.install(|| {
        [Variant::BCirc, Variant::B]
            .par_iter()
            .map(|&v| {
                let inst = format!("{v:?} degree={} words<={} k<={}", bound.degree, bound.word_len, bound.k);
                match enumerate_basis_elements(m.family(), bound, v).and_then(|els| verify_g_injectivity(&els, &b)) {
                    Ok(r) => check(
                        "g-injectivity",
                        inst,
                        r.passed(),
                        json!({ "elements": r.elements, "collisions": r.collisions, "leading_terms_distinct": r.leading.passed, "offsets_ok": r.offsets_ok }),
                    ),
                    Err(e) => error_check("g-injectivity", inst, e),
                }
            })
            .collect()
    });
    out.extend(reports);
    Ok(out)
}

fn shapes(max: usize) -> Vec<Vec<Glue>> {
    let mut out = Vec::new();
    for d in 1..=max {
        for bits in 0..1u32 << (d - 1) {
            out.push((0..d - 1).map(|i| if bits >> i & 1 == 1 { Glue::Above } else { Glue::Right }).collect());
        }
    }
    out
}

fn snake_check(g: &SnakeGraph, inst: String) -> Check {
    let lattice = g.lattice();
    let parity = g.verify_twist_parity(&lattice);
    let ideals = g.poset().order_ideals().len();
    let ok = parity.passed() && ideals == lattice.len();
    check(
        "lattice-parity",
        inst,
        ok,
        json!({ "matchings": lattice.len(), "order_ideals": ideals, "covers_checked": parity.checked, "parity_failures": parity.failures }),
    )
}

fn band_check(b: &BandGraph, inst: String) -> Check {
    let good = b.good_lattice();
    let parity = b.snake().verify_twist_parity(&good);
    match b.poset() {
        Ok(p) => {
            let ideals = p.order_ideals().len();
            let descends = b.descends(b.snake().minimal_matching());
            check(
                "band-lattice",
                inst,
                ideals == good.len() && descends && parity.passed(),
                json!({ "good_matchings": good.len(), "order_ideals": ideals, "minimal_descends": descends }),
            )
        }
        Err(e) => error_check("band-lattice", inst, e),
    }
}

fn lattice_parity(s: &Session, o: &Options, pool: &rayon::ThreadPool) -> Result<Vec<Check>, CliError> {
    if o.max_tiles == 0 || o.max_tiles > 16 {
        return Err(CliError::Validation("--max-tiles must be in 1..=16".into()));
    }
    let all = shapes(o.max_tiles);
    let mut out: Vec<Check> = pool.install(|| {
        all.par_iter()
            .map(|glue| {
                let inst = format!(
                    "shape {}",
                    glue.iter().map(|g| if *g == Glue::Right { 'R' } else { 'A' }).collect::<String>()
                );
                match SnakeGraph::from_shape(glue) {
                    Ok(g) => snake_check(&g, inst),
                    Err(e) => error_check("lattice-parity", inst, e),
                }
            })
            .collect()
    });
    if let Some(t) = s.optional_surface()? {
        let m = family_model(&t)?;
        for w in m.catalog(o.max_tiles).map_err(invalid)? {
            let inst = word_text(&t, &w);
            match &w {
                CurveWord::Open { .. } => out.push(match SnakeGraph::build(&t, &w) {
                    Ok(g) => snake_check(&g, format!("arc {inst}")),
                    Err(e) => error_check("lattice-parity", inst, e),
                }),
                CurveWord::Closed { .. } => {
                    for r in 0..w.len() {
                        let rw = w.rotated(r);
                        let inst = format!("loop {inst} cut {}", r + 1);
                        out.push(match BandGraph::build(&t, &rw) {
                            Ok(b) => band_check(&b, inst),
                            Err(e) => error_check("band-lattice", inst, e),
                        });
                    }
                }
                CurveWord::Segment(_) => {}
            }
        }
    }
    Ok(out)
}

fn laurent(s: &Session, o: &Options) -> Result<Vec<Check>, CliError> {
    let t = s.surface()?;
    let seed0 = Seed::principal(&t.signed_adjacency()).map_err(invalid)?;
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut out = Vec::new();
    for p in 0..o.paths {
        let len = rng.gen_range(1..=o.length.max(1));
        let path: Vec<usize> = (0..len).map(|_| rng.gen_range(0..t.n())).collect();
        let inst = format!("path {:04} {:?}", p, path.iter().map(|k| k + 1).collect::<Vec<_>>());
        out.push(match seed0.mutate_path(&path) {
            Ok(sd) => {
                let bad: Vec<String> =
                    sd.cluster().iter().filter(|x| !x.all_coefficients_positive()).map(|x| x.to_string()).collect();
                check("laurent-positivity", inst, bad.is_empty(), json!({ "non_positive": bad }))
            }
            Err(e) => error_check("laurent-positivity", inst, e),
        });
    }
    Ok(out)
}

//! Chebyshev polynomials with coefficients, bangles and bracelets, compatible
//! collections and the identities relating their expansions.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::cluster::{assert_distinct_leading_terms, LeadingReport};
use crate::expansion::{expand_arc, expand_loop, verify_offsets, ExpansionCache, ExpansionError};
use crate::laurent::{Context, GVector, LaurentError, LaurentPoly};
use crate::surface::family::{Chord, ChordSet, Family, Model};
use crate::surface::{CurveWord, Edge, SurfaceError, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasesError {
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("bracelet multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("no monomial coefficients solve the exchange relation for arc {0}")]
    NoPtolemySolution(String),
}

/// Variables `x, Y` of the Chebyshev polynomials.
pub fn cheb_context() -> Arc<Context> {
    Context::new(["x", "Y"])
}

/// The normalized Chebyshev polynomial `T_k(x)` with coefficient `Y`.
pub fn chebyshev_t(k: usize) -> LaurentPoly {
    chebyshev_table(k).pop().expect("table has k + 1 entries")
}

/// `T_0, ..., T_k`.
pub fn chebyshev_table(k: usize) -> Vec<LaurentPoly> {
    let ctx = cheb_context();
    let x = LaurentPoly::var(&ctx, 0);
    let y = LaurentPoly::var(&ctx, 1);
    let mut out = vec![LaurentPoly::constant(&ctx, 2), x.clone()];
    for j in 2..=k {
        let next = &(&x * &out[j - 1]) - &(&y * &out[j - 2]);
        out.push(next);
    }
    out.truncate(k + 1);
    out
}

/// Check `T_k(t + Y/t) = t^k + Y^k/t^k` in the Laurent ring of `t, Y`.
pub fn chebyshev_identity_holds(k: usize) -> bool {
    let ctx = Context::new(["t", "Y"]);
    let t = LaurentPoly::var(&ctx, 0);
    let y = LaurentPoly::var(&ctx, 1);
    let arg = &t + &LaurentPoly::monomial(&ctx, vec![-1, 1], 1);
    let Ok(lhs) = chebyshev_t(k).substitute(&[arg, y]) else {
        return false;
    };
    let rhs = &LaurentPoly::monomial(&ctx, vec![k as i32, 0], 1)
        + &LaurentPoly::monomial(&ctx, vec![-(k as i32), k as i32], 1);
    lhs == rhs
}

/// One summand `binom * Y^y_power * T_index` (or a constant when `index` is absent).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChebTerm {
    pub coeff: BigInt,
    pub y_power: u32,
    pub index: Option<usize>,
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `x^k` as a positive combination of `T_k, T_{k-2}, ...`, with a constant tail for even k.
pub fn monomial_to_chebyshev(k: usize) -> Vec<ChebTerm> {
    let mut out = Vec::new();
    for i in 0..=k / 2 {
        let index = k - 2 * i;
        if index == 0 {
            out.push(ChebTerm { coeff: binomial(k, i), y_power: i as u32, index: None });
        } else {
            out.push(ChebTerm { coeff: binomial(k, i), y_power: i as u32, index: Some(index) });
        }
    }
    out
}

/// Re-expand a Chebyshev combination as a polynomial in `x, Y`.
pub fn cheb_combination_value(terms: &[ChebTerm]) -> LaurentPoly {
    let ctx = cheb_context();
    let top = terms.iter().filter_map(|t| t.index).max().unwrap_or(0);
    let table = chebyshev_table(top.max(1));
    let mut out = LaurentPoly::zero(&ctx);
    for t in terms {
        let base = match t.index {
            Some(j) => table[j].clone(),
            None => LaurentPoly::one(&ctx),
        };
        let part = base.shift(&[0, t.y_power as i32]).scale(&t.coeff);
        out = &out + &part;
    }
    out
}

/// The k-fold concatenation of a closed word, canonicalized.
pub fn bracelet_word(w: &CurveWord, k: usize) -> Result<CurveWord, BasesError> {
    if k == 0 {
        return Err(BasesError::ZeroMultiplicity);
    }
    Ok(w.repeat(k).canonical())
}

/// `Y_zeta`: the product of `y_tau` over crossings, with multiplicity.
pub fn loop_coefficient(t: &Triangulation, w: &CurveWord) -> LaurentPoly {
    let n = t.n();
    let mut e = vec![0; 2 * n];
    for &c in w.crossings() {
        e[n + c] += 1;
    }
    LaurentPoly::monomial(&Context::principal(n), e, 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BraceletReport {
    pub k: usize,
    pub bracelet: String,
    pub chebyshev: String,
    pub equal: bool,
}

/// Compare the band-graph expansion of `Brac_k` with `T_k(x_zeta)` at `Y = Y_zeta`.
pub fn verify_bracelet_chebyshev(t: &Triangulation, w: &CurveWord, k: usize) -> Result<BraceletReport, BasesError> {
    let lhs = expand_loop(t, &bracelet_word(w, k)?, 0, false)?.laurent;
    let xz = expand_loop(t, w, 0, false)?.laurent;
    let rhs = chebyshev_t(k).substitute(&[xz, loop_coefficient(t, w)])?;
    Ok(BraceletReport { k, bracelet: lhs.to_string(), chebyshev: rhs.to_string(), equal: lhs == rhs })
}

/// Number of good matchings of the band graph of a closed word.
pub fn good_count(t: &Triangulation, w: &CurveWord) -> Result<usize, BasesError> {
    let band = crate::snakegraph::BandGraph::build(t, &w.canonical()).map_err(ExpansionError::from)?;
    Ok(band.good_lattice().len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    /// `counts[k] = |Good(Brac_k)|`, with `counts[0] = 2` by the `T_0 = 2` convention.
    pub counts: Vec<usize>,
    pub recurrence: Vec<bool>,
    pub strict: Vec<bool>,
}

impl CountReport {
    pub fn passed(&self) -> bool {
        self.recurrence.iter().chain(&self.strict).all(|&b| b)
    }
}

/// For `k = 1..=kmax`: `|G_{k+1}| = |G_1||G_k| - |G_{k-1}|` and `|G_{k+1}| < |G_1||G_k|`.
pub fn verify_good_count_inequality(t: &Triangulation, w: &CurveWord, kmax: usize) -> Result<CountReport, BasesError> {
    let mut counts = vec![2];
    for k in 1..=kmax + 1 {
        counts.push(good_count(t, &bracelet_word(w, k)?)?);
    }
    let mut recurrence = Vec::new();
    let mut strict = Vec::new();
    for k in 1..=kmax {
        let prod = counts[1] * counts[k];
        recurrence.push(counts[k + 1] + counts[k - 1] == prod);
        strict.push(counts[k + 1] < prod);
    }
    Ok(CountReport { counts, recurrence, strict })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PtolemyReport {
    pub instance: String,
    /// Coefficient of `x_a x_c` and of `x_b x_d`.
    pub y: String,
    pub y_prime: String,
    pub solutions: usize,
    pub one_trivial: bool,
}

impl PtolemyReport {
    pub fn passed(&self) -> bool {
        self.solutions == 1 && self.one_trivial
    }
}

fn max_term(p: &LaurentPoly) -> Option<(Vec<i32>, BigInt)> {
    p.terms().last().map(|(e, c)| (e.clone(), c.clone()))
}

fn y_monomial_quotient(num: &LaurentPoly, den: &LaurentPoly, n: usize) -> Option<LaurentPoly> {
    let q = num.exact_div(den).ok()?;
    let (e, c) = q.as_monomial()?;
    if !c.is_one() || e[..n].iter().any(|&a| a != 0) {
        return None;
    }
    Some(q)
}

/// All solutions of `lhs = Y * a + Y' * b` with `Y, Y'` Laurent monomials in the coefficient variables.
///
/// With positive coefficients the largest term of `lhs` is the largest term of `Y a` or of
/// `Y' b`, so each solution is found from one of these two candidates.
pub fn solve_exchange(lhs: &LaurentPoly, a: &LaurentPoly, b: &LaurentPoly) -> Vec<(LaurentPoly, LaurentPoly)> {
    let n = lhs.ctx().len() / 2;
    let mut sols: Vec<(LaurentPoly, LaurentPoly)> = Vec::new();
    let Some((lm, _)) = max_term(lhs) else {
        return sols;
    };
    let ctx = lhs.ctx().clone();
    for (first, other, swap) in [(a, b, false), (b, a, true)] {
        let Some((fm, _)) = max_term(first) else {
            continue;
        };
        let diff: Vec<i32> = lm.iter().zip(&fm).map(|(x, y)| x - y).collect();
        if diff[..n].iter().any(|&a| a != 0) {
            continue;
        }
        let cand = LaurentPoly::monomial(&ctx, diff, 1);
        let rest = lhs - &(&cand * first);
        let Some(y2) = y_monomial_quotient(&rest, other, n) else {
            continue;
        };
        let pair = if swap { (y2, cand) } else { (cand, y2) };
        if !sols.contains(&pair) {
            sols.push(pair);
        }
    }
    sols
}

fn side_value(model: &Model, cache: &ExpansionCache, c: Chord) -> Result<LaurentPoly, BasesError> {
    let t = model.triangulation();
    let w = model.word_of(c)?;
    if let CurveWord::Segment(Edge::Boundary(_)) = w {
        return Ok(LaurentPoly::one(&Context::principal(t.n())));
    }
    Ok(cache.expand(t, &w, 0, false)?.laurent.clone())
}

/// Ptolemy check for arc slot `k` of a triangulation of a family surface, with every
/// arc expanded with respect to the model's standard triangulation.
pub fn verify_ptolemy_in(
    model: &Model,
    cache: &ExpansionCache,
    set: &ChordSet,
    k: usize,
) -> Result<PtolemyReport, BasesError> {
    let (flipped, sides) = set.flip(k)?;
    let eta = side_value(model, cache, set.chords()[k])?;
    let theta = side_value(model, cache, flipped.chords()[k])?;
    let v: Vec<LaurentPoly> = sides.iter().map(|&c| side_value(model, cache, c)).collect::<Result<_, _>>()?;
    let lhs = &eta * &theta;
    let a = &v[0] * &v[2];
    let b = &v[1] * &v[3];
    report(format!("{:?} flip {}", set.chords()[k], k + 1), &lhs, &a, &b)
}

fn report(instance: String, lhs: &LaurentPoly, a: &LaurentPoly, b: &LaurentPoly) -> Result<PtolemyReport, BasesError> {
    let mut sols = solve_exchange(lhs, a, b);
    if a == b {
        sols.retain(|(y, y2)| y.to_string() <= y2.to_string());
    }
    let Some((y, y2)) = sols.first().cloned() else {
        return Err(BasesError::NoPtolemySolution(instance));
    };
    let is_one = |p: &LaurentPoly| p.as_monomial().is_some_and(|(e, _)| e.iter().all(|&x| x == 0));
    let polynomial = |p: &LaurentPoly| p.terms().all(|(e, _)| e.iter().all(|&x| x >= 0));
    let one_trivial = is_one(&y) != is_one(&y2) && polynomial(&y) && polynomial(&y2);
    Ok(PtolemyReport { instance, y: y.to_string(), y_prime: y2.to_string(), solutions: sols.len(), one_trivial })
}

/// Ptolemy check for arc `k` of an arbitrary triangulation, using its own initial variables.
pub fn verify_ptolemy(t: &Triangulation, k: usize) -> Result<PtolemyReport, BasesError> {
    let (_, sides) = t.flip(k)?;
    let ctx = Context::principal(t.n());
    let eta = LaurentPoly::var(&ctx, k);
    let [t1, _] = t.triangles_of(k);
    let theta = expand_arc(t, &t.open_word(&[k], Some(t1))?, 0, false)?.laurent;
    let val = |e: Edge| match e {
        Edge::Arc(i) => LaurentPoly::var(&ctx, i),
        Edge::Boundary(_) => LaurentPoly::one(&ctx),
    };
    let lhs = &eta * &theta;
    let a = &val(sides[0]) * &val(sides[2]);
    let b = &val(sides[1]) * &val(sides[3]);
    report(t.arc_names()[k].clone(), &lhs, &a, &b)
}

/// One constituent of a compatible collection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Piece {
    Arc { curve: String, multiplicity: usize },
    Bangle { curve: String, k: usize },
    Bracelet { curve: String, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// Bangles: parallel copies of loops.
    BCirc,
    /// Bracelets: at most one bracelet per loop.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BasisBound {
    /// Maximal number of arcs (with multiplicity) in a collection.
    pub degree: usize,
    /// Maximal crossing-word length of an arc.
    pub word_len: usize,
    /// Maximal loop multiplicity.
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub pieces: Vec<Piece>,
    pub laurent: LaurentPoly,
    pub g: GVector,
}

/// All compatible collections within the bound, with product expansions and g-vectors.
pub fn enumerate_basis_elements(
    family: Family,
    bound: BasisBound,
    variant: Variant,
) -> Result<Vec<BasisElement>, BasesError> {
    let model = Model::new(family)?;
    let t = model.triangulation();
    let n = t.n();
    let ctx = Context::principal(n);
    let arcs = model.catalog_chords(bound.word_len)?;
    let arc_values: Vec<(LaurentPoly, GVector)> = arcs
        .iter()
        .map(|(_, w)| {
            let r = expand_arc(t, w, 0, false)?;
            Ok((r.laurent, r.g.expect("arcs are nonzero")))
        })
        .collect::<Result<_, BasesError>>()?;
    let mut collections: Vec<Vec<usize>> = vec![vec![]];
    let mut frontier: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..bound.degree {
        let mut next = Vec::new();
        for c in &frontier {
            let start = c.last().copied().unwrap_or(0);
            for i in start..arcs.len() {
                if c.iter().all(|&j| model.compatible(arcs[i].0, arcs[j].0)) {
                    let mut d = c.clone();
                    d.push(i);
                    next.push(d);
                }
            }
        }
        collections.extend(next.iter().cloned());
        frontier = next;
    }
    let loop_part: Vec<Option<(usize, LaurentPoly, GVector)>> = match family {
        Family::Annulus(..) if bound.k > 0 => {
            let z = model.core_loop()?;
            let mut v = vec![None];
            for k in 1..=bound.k {
                let r = match variant {
                    Variant::BCirc => {
                        let base = expand_loop(t, &z, 0, false)?;
                        (base.laurent.pow(k as u32), base.g.expect("loop is nonzero").scale(k as i64))
                    }
                    Variant::B => {
                        let r = expand_loop(t, &bracelet_word(&z, k)?, 0, false)?;
                        (r.laurent, r.g.expect("bracelet is nonzero"))
                    }
                };
                v.push(Some((k, r.0, r.1)));
            }
            v
        }
        _ => vec![None],
    };
    let loop_name = match family {
        Family::Annulus(..) => model.core_loop()?.to_string(),
        Family::Polygon(_) => String::new(),
    };
    let mut out = Vec::new();
    for c in &collections {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &i in c {
            *counts.entry(i).or_default() += 1;
        }
        let mut laurent = LaurentPoly::one(&ctx);
        let mut g = GVector::zero(n);
        let mut pieces = Vec::new();
        for (&i, &m) in &counts {
            laurent = &laurent * &arc_values[i].0.pow(m as u32);
            g = g.add(&arc_values[i].1.scale(m as i64));
            pieces.push(Piece::Arc { curve: arcs[i].1.to_string(), multiplicity: m });
        }
        for lp in &loop_part {
            match lp {
                None => out.push(BasisElement { pieces: pieces.clone(), laurent: laurent.clone(), g: g.clone() }),
                Some((k, lv, lg)) => {
                    if !c.iter().all(|&i| model.compatible_with_loop(arcs[i].0)) {
                        continue;
                    }
                    let mut p = pieces.clone();
                    p.push(match variant {
                        Variant::BCirc => Piece::Bangle { curve: loop_name.clone(), k: *k },
                        Variant::B => Piece::Bracelet { curve: loop_name.clone(), k: *k },
                    });
                    out.push(BasisElement { pieces: p, laurent: &laurent * lv, g: g.add(lg) });
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub elements: usize,
    pub collisions: Vec<(usize, usize)>,
    pub leading: LeadingReport,
    pub offsets_ok: bool,
}

impl InjectivityReport {
    pub fn passed(&self) -> bool {
        self.collisions.is_empty() && self.leading.passed && self.offsets_ok
    }
}

/// Pairwise distinct g-vectors, distinct leading terms, and non-negative offsets.
pub fn verify_g_injectivity(
    elements: &[BasisElement],
    b: &crate::matrix::ExchangeMatrix,
) -> Result<InjectivityReport, BasesError> {
    let bt = b.extend_principal().map_err(|e| BasesError::Surface(SurfaceError::Parse(e.to_string())))?;
    let mut seen: BTreeMap<&GVector, usize> = BTreeMap::new();
    let mut collisions = Vec::new();
    for (i, e) in elements.iter().enumerate() {
        if let Some(&j) = seen.get(&e.g) {
            collisions.push((j, i));
        } else {
            seen.insert(&e.g, i);
        }
    }
    let polys: Vec<LaurentPoly> = elements.iter().map(|e| e.laurent.clone()).collect();
    let leading = assert_distinct_leading_terms(&polys, &bt);
    let offsets_ok = polys.iter().all(|p| verify_offsets(p, &bt).passed());
    Ok(InjectivityReport { elements: elements.len(), collisions, leading, offsets_ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_entries() {
        assert_eq!(chebyshev_t(0).to_string(), "2");
        assert_eq!(chebyshev_t(2).to_string(), "-2*Y + x^2");
        for k in 0..=8 {
            assert!(chebyshev_identity_holds(k), "k = {k}");
        }
    }

    #[test]
    fn monomials() {
        let ctx = cheb_context();
        for k in 1..=8 {
            let v = cheb_combination_value(&monomial_to_chebyshev(k));
            assert_eq!(v, LaurentPoly::monomial(&ctx, vec![k as i32, 0], 1), "k = {k}");
        }
        let three = monomial_to_chebyshev(3);
        assert_eq!(three[1], ChebTerm { coeff: 3.into(), y_power: 1, index: Some(1) });
    }

    #[test]
    fn square_ptolemy() {
        let m = Model::new(Family::Polygon(4)).unwrap();
        let r = verify_ptolemy(m.triangulation(), 0).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}

//! Laurent expansions of arcs and closed loops from matchings of snake and band graphs.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::laurent::{g_degree, is_g_homogeneous, Context, GVector, LaurentError, LaurentPoly};
use crate::matrix::ExchangeMatrix;
use crate::snakegraph::{BandGraph, SnakeError, SnakeGraph};
use crate::surface::{CurveWord, Edge, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error(transparent)]
    Snake(#[from] SnakeError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("expected an open word or an edge")]
    NotArc,
    #[error("expected a closed word")]
    NotLoop,
    #[error("{0} terms free of coefficient variables")]
    LeadingTerm(usize),
    #[error("expansion is not homogeneous")]
    NotHomogeneous,
    #[error("F-polynomial of an arc has constant term {0}")]
    ConstantTerm(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionResult {
    pub word: CurveWord,
    pub surface: u64,
    pub kinks: u32,
    /// In `x1..xn, y1..yn`.
    pub laurent: LaurentPoly,
    /// In `y1..yn`.
    pub f_poly: LaurentPoly,
    /// Absent for the zero element.
    pub g: Option<GVector>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpansionJson {
    pub curve: String,
    pub kinks: u32,
    pub laurent: String,
    pub factored: String,
    pub f_polynomial: String,
    pub g_vector: Option<Vec<i64>>,
    pub terms: usize,
}

impl ExpansionResult {
    pub fn to_json(&self) -> ExpansionJson {
        ExpansionJson {
            curve: self.word.to_string(),
            kinks: self.kinks,
            laurent: self.laurent.to_string(),
            factored: self.laurent.factored_text(),
            f_polynomial: self.f_poly.to_string(),
            g_vector: self.g.as_ref().map(|g| g.0.clone()),
            terms: self.laurent.len(),
        }
    }
}

fn ctx_for(t: &Triangulation) -> Arc<Context> {
    Context::principal(t.n())
}

/// Product of the x-variables of the crossed arcs.
pub fn crossing_monomial(t: &Triangulation, w: &CurveWord) -> LaurentPoly {
    let n = t.n();
    let mut e = vec![0; 2 * n];
    for &c in w.crossings() {
        e[c] += 1;
    }
    LaurentPoly::monomial(&ctx_for(t), e, 1)
}

fn sign(kinks: u32) -> BigInt {
    if kinks.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Set every x to 1.
pub fn f_polynomial(laurent: &LaurentPoly) -> LaurentPoly {
    let n = laurent.ctx().len() / 2;
    let map: Vec<Option<usize>> = (0..2 * n).map(|i| i.checked_sub(n)).collect();
    laurent.remap(&Context::coefficients(n), &map)
}

/// The degree of the unique term free of coefficient variables.
pub fn leading_g(laurent: &LaurentPoly, b: &ExchangeMatrix) -> Result<GVector, ExpansionError> {
    let n = b.cols();
    let free: Vec<&Vec<i32>> = laurent.terms().map(|(e, _)| e).filter(|e| e[n..].iter().all(|&c| c == 0)).collect();
    if free.len() != 1 {
        return Err(ExpansionError::LeadingTerm(free.len()));
    }
    let g = g_degree(free[0], b)?;
    if is_g_homogeneous(laurent, b).as_ref() != Some(&g) {
        return Err(ExpansionError::NotHomogeneous);
    }
    Ok(g)
}

/// g-vector of an expansion with respect to `B_T`.
pub fn g_vector(r: &ExpansionResult, b: &ExchangeMatrix) -> Result<GVector, ExpansionError> {
    leading_g(&r.laurent, b)
}

fn finish(
    t: &Triangulation,
    word: CurveWord,
    kinks: u32,
    laurent: LaurentPoly,
) -> Result<ExpansionResult, ExpansionError> {
    let f_poly = f_polynomial(&laurent);
    let g = if laurent.is_zero() { None } else { Some(leading_g(&laurent, &t.signed_adjacency())?) };
    Ok(ExpansionResult { word, surface: t.fingerprint(), kinks, laurent, f_poly, g })
}

/// Sum over perfect matchings of the snake graph, divided by the crossing monomial.
pub fn snake_sum(t: &Triangulation, g: &SnakeGraph, crossings_word: &CurveWord) -> Result<LaurentPoly, ExpansionError> {
    let n = t.n();
    let ctx = ctx_for(t);
    let lattice = g.lattice();
    let terms = lattice.matchings.iter().zip(&lattice.heights).map(|(&m, h)| {
        let mut e = g.weight(m, n);
        e.extend(g.height_exponents(h, n));
        (e, BigInt::one())
    });
    let sum = LaurentPoly::from_terms(&ctx, terms);
    Ok(sum.divide_by_monomial(&crossing_monomial(t, crossings_word))?)
}

/// Sum over good matchings of the band graph, divided by the crossing monomial.
pub fn band_sum(t: &Triangulation, band: &BandGraph, w: &CurveWord) -> Result<LaurentPoly, ExpansionError> {
    let n = t.n();
    let ctx = ctx_for(t);
    let lattice = band.good_lattice();
    let g = band.snake();
    let terms = lattice.matchings.iter().zip(&lattice.heights).map(|(&m, h)| {
        let mut e = band.weight(m, n);
        e.extend(g.height_exponents(h, n));
        (e, BigInt::one())
    });
    let sum = LaurentPoly::from_terms(&ctx, terms);
    Ok(sum.divide_by_monomial(&crossing_monomial(t, w))?)
}

/// `x_gamma` for a (generalized) arc given by its crossing word.
///
/// `contractible` marks a curve cutting out a contractible monogon, whose value is 0.
pub fn expand_arc(
    t: &Triangulation,
    w: &CurveWord,
    kinks: u32,
    contractible: bool,
) -> Result<ExpansionResult, ExpansionError> {
    let ctx = ctx_for(t);
    if contractible {
        return finish(t, w.clone(), kinks, LaurentPoly::zero(&ctx));
    }
    let base = match w {
        CurveWord::Segment(Edge::Arc(i)) => LaurentPoly::var(&ctx, *i),
        CurveWord::Segment(Edge::Boundary(_)) => LaurentPoly::one(&ctx),
        CurveWord::Open { .. } => snake_sum(t, &SnakeGraph::build(t, w)?, w)?,
        CurveWord::Closed { .. } => return Err(ExpansionError::NotArc),
    };
    let laurent = base.scale(&sign(kinks));
    let r = finish(t, w.clone(), kinks, laurent)?;
    if kinks == 0 && r.f_poly.coeff(&vec![0; t.n()]) != BigInt::one() {
        return Err(ExpansionError::ConstantTerm(r.f_poly.coeff(&vec![0; t.n()]).to_string()));
    }
    Ok(r)
}

/// `x_zeta` for a closed loop, computed on the band graph cut at the canonical rotation.
///
/// `contractible` marks a contractible loop, whose value is -2.
pub fn expand_loop(
    t: &Triangulation,
    w: &CurveWord,
    kinks: u32,
    contractible: bool,
) -> Result<ExpansionResult, ExpansionError> {
    if contractible {
        let ctx = ctx_for(t);
        return finish(t, w.clone(), kinks, LaurentPoly::constant(&ctx, -2));
    }
    if !w.is_closed() {
        return Err(ExpansionError::NotLoop);
    }
    expand_loop_at(t, &w.canonical(), kinks)
}

/// Like [`expand_loop`] but cutting the band at the word's own first triangle.
pub fn expand_loop_at(t: &Triangulation, w: &CurveWord, kinks: u32) -> Result<ExpansionResult, ExpansionError> {
    if !w.is_closed() {
        return Err(ExpansionError::NotLoop);
    }
    let band = BandGraph::build(t, w)?;
    let laurent = band_sum(t, &band, w)?.scale(&sign(kinks));
    finish(t, w.clone(), kinks, laurent)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffsetReport {
    pub leader: Option<Vec<i32>>,
    pub failures: Vec<String>,
}

impl OffsetReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.leader.is_some()
    }
}

/// Every exponent vector minus the leading one must be a non-negative integer
/// combination of the columns of `bt` (the extended exchange matrix).
pub fn verify_offsets(laurent: &LaurentPoly, bt: &ExchangeMatrix) -> OffsetReport {
    let n = bt.cols();
    let free: Vec<&Vec<i32>> = laurent.terms().map(|(e, _)| e).filter(|e| e[n..].iter().all(|&c| c == 0)).collect();
    if free.len() != 1 {
        return OffsetReport { leader: None, failures: vec![format!("{} coefficient-free terms", free.len())] };
    }
    let lead = free[0].clone();
    let mut failures = Vec::new();
    for (e, _) in laurent.terms() {
        if *e == lead {
            continue;
        }
        let diff: Vec<i64> = e.iter().zip(&lead).map(|(a, b)| (a - b) as i64).collect();
        match bt.nonnegative_combination(&diff) {
            Some(c) if c.iter().all(|q| q.is_integer() && !q.is_negative()) => {}
            _ => failures.push(format!("offset {diff:?}")),
        }
    }
    OffsetReport { leader: Some(lead), failures }
}

type CacheKey = (u64, CurveWord, u32, bool);

/// Concurrent memo table for expansions. Concurrent misses may compute the same key twice.
#[derive(Debug, Default)]
pub struct ExpansionCache {
    map: RwLock<HashMap<CacheKey, Arc<ExpansionResult>>>,
}

impl ExpansionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Expand an arc or loop (kinks, contractible flag), memoized by canonical word.
    pub fn expand(
        &self,
        t: &Triangulation,
        w: &CurveWord,
        kinks: u32,
        contractible: bool,
    ) -> Result<Arc<ExpansionResult>, ExpansionError> {
        let key = (t.fingerprint(), w.canonical(), kinks, contractible);
        if let Some(r) = self.map.read().expect("cache lock").get(&key) {
            return Ok(r.clone());
        }
        let r = Arc::new(if w.is_closed() {
            expand_loop(t, w, kinks, contractible)?
        } else {
            expand_arc(t, w, kinks, contractible)?
        });
        self.map.write().expect("cache lock").insert(key, r.clone());
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::family::{Family, Model};

    #[test]
    fn square_diagonal() {
        let m = Model::new(Family::Polygon(4)).unwrap();
        let t = m.triangulation();
        let w = t.open_word(&[0], None).unwrap();
        let r = expand_arc(t, &w, 0, false).unwrap();
        assert_eq!(r.laurent.factored_text(), "(1 + y1)*x1^-1");
        assert_eq!(r.f_poly.to_string(), "1 + y1");
        assert_eq!(r.g, Some(GVector(vec![-1])));
        let k = expand_arc(t, &w, 1, false).unwrap();
        assert_eq!(k.laurent, -&r.laurent);
        let s = expand_arc(t, &CurveWord::Segment(Edge::Arc(0)), 0, false).unwrap();
        assert_eq!(s.laurent.to_string(), "x1");
        assert_eq!(s.g, Some(GVector(vec![1])));
        let off = verify_offsets(&r.laurent, &t.signed_adjacency().extend_principal().unwrap());
        assert!(off.passed(), "{off:?}");
    }

    #[test]
    fn crossing_monomials() {
        let m = Model::new(Family::Annulus(1, 1)).unwrap();
        let t = m.triangulation();
        assert_eq!(crossing_monomial(t, &CurveWord::Segment(Edge::Arc(0))).to_string(), "1");
        let z = m.core_loop().unwrap();
        let c = crossing_monomial(t, &z.repeat(2));
        assert_eq!(c.to_string(), "x1^2*x2^2");
    }

    #[test]
    fn annulus_loop_has_three_terms() {
        let m = Model::new(Family::Annulus(1, 1)).unwrap();
        let t = m.triangulation();
        let z = m.core_loop().unwrap();
        let r = expand_loop(t, &z, 0, false).unwrap();
        assert_eq!(r.laurent.len(), 3, "{}", r.laurent);
        assert!(r.laurent.all_coefficients_positive());
        let r2 = expand_loop_at(t, &z.rotated(1), 0).unwrap();
        assert_eq!(r.laurent, r2.laurent);
        let c = expand_loop(t, &z, 0, true).unwrap();
        assert_eq!(c.laurent.to_string(), "-2");
    }
}

//! Exact multivariate Laurent polynomials over arbitrary-precision integers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::ExchangeMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("variable contexts differ: {0:?} vs {1:?}")]
    ContextMismatch(Vec<String>, Vec<String>),
    #[error("divisor is not a unit monomial")]
    NotUnitMonomial,
    #[error("cannot raise a non-monomial to the negative power {0}")]
    NegativePowerOfSum(i64),
    #[error("polynomial is empty")]
    Empty,
    #[error("expected {expected} entries, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("division is not exact")]
    NotExact,
    #[error("variable {0} is not a coefficient variable")]
    NotCoefficient(String),
}

/// Ordered variable names shared by every polynomial that lives in the same ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Context {
    names: Vec<String>,
}

impl Context {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Context> {
        Arc::new(Context { names: names.into_iter().map(Into::into).collect() })
    }

    /// `x1..xn, y1..yn`.
    pub fn principal(n: usize) -> Arc<Context> {
        let names = (1..=n).map(|i| format!("x{i}")).chain((1..=n).map(|j| format!("y{j}")));
        Context::new(names)
    }

    /// `y1..yn`.
    pub fn coefficients(n: usize) -> Arc<Context> {
        Context::new((1..=n).map(|j| format!("y{j}")))
    }

    /// `x1..xm`, the first `n` mutable and the rest frozen.
    pub fn extended(m: usize) -> Arc<Context> {
        Context::new((1..=m).map(|i| format!("x{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn same_ctx(a: &Arc<Context>, b: &Arc<Context>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub exponents: Vec<i32>,
}

/// Graded lexicographic order: lower total degree first, ties broken by
/// descending lexicographic comparison.
pub fn grlex_cmp(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| b.cmp(a))
}

#[derive(Clone)]
pub struct LaurentPoly {
    ctx: Arc<Context>,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl std::hash::Hash for LaurentPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.hash(state);
        for (e, c) in &self.terms {
            e.hash(state);
            c.hash(state);
        }
    }
}

impl LaurentPoly {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        LaurentPoly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::constant(ctx, BigInt::one())
    }

    pub fn constant(ctx: &Arc<Context>, c: impl Into<BigInt>) -> Self {
        Self::monomial(ctx, vec![0; ctx.len()], c)
    }

    pub fn var(ctx: &Arc<Context>, i: usize) -> Self {
        let mut e = vec![0; ctx.len()];
        e[i] = 1;
        Self::monomial(ctx, e, 1)
    }

    pub fn monomial(ctx: &Arc<Context>, exps: Vec<i32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), ctx.len(), "exponent vector length");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { ctx: ctx.clone(), terms }
    }

    pub fn from_terms(ctx: &Arc<Context>, terms: impl IntoIterator<Item = (Vec<i32>, BigInt)>) -> Self {
        let mut p = Self::zero(ctx);
        for (e, c) in terms {
            assert_eq!(e.len(), ctx.len(), "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    /// Terms in canonical (graded lexicographic) order.
    pub fn sorted_terms(&self) -> Vec<(&Vec<i32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(a.0, b.0));
        v
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The single term as (exponents, coefficient), if there is exactly one.
    pub fn as_monomial(&self) -> Option<(&Vec<i32>, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), LaurentError> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(LaurentError::ContextMismatch(self.ctx.names.clone(), other.ctx.names.clone()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check(other)?;
        let mut acc: HashMap<Vec<i32>, BigInt> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPoly { ctx: self.ctx.clone(), terms })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        LaurentPoly { ctx: self.ctx.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Power with a possibly negative exponent; negative exponents need a unit monomial.
    pub fn pow_signed(&self, k: i64) -> Result<Self, LaurentError> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        let inv = self.inverse_monomial().ok_or(LaurentError::NegativePowerOfSum(k))?;
        Ok(inv.pow((-k) as u32))
    }

    fn inverse_monomial(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        if !(c.is_one() || (-c).is_one()) {
            return None;
        }
        let neg: Vec<i32> = e.iter().map(|x| -x).collect();
        Some(Self::monomial(&self.ctx, neg, c.clone()))
    }

    /// Multiply every exponent vector by `x^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        assert_eq!(shift.len(), self.ctx.len());
        let terms =
            self.terms.iter().map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone())).collect();
        LaurentPoly { ctx: self.ctx.clone(), terms }
    }

    pub fn divide_by_monomial(&self, m: &LaurentPoly) -> Result<Self, LaurentError> {
        self.check(m)?;
        let inv = m.inverse_monomial().ok_or(LaurentError::NotUnitMonomial)?;
        Ok(self * &inv)
    }

    /// Exact quotient `self / d` in the Laurent ring, or `NotExact`.
    pub fn exact_div(&self, d: &LaurentPoly) -> Result<Self, LaurentError> {
        self.check(d)?;
        if d.is_zero() {
            return Err(LaurentError::NotExact);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        if d.is_monomial() {
            let (e, c) = d.as_monomial().unwrap();
            let mut terms = BTreeMap::new();
            for (te, tc) in &self.terms {
                if !(tc % c).is_zero() {
                    return Err(LaurentError::NotExact);
                }
                terms.insert(te.iter().zip(e).map(|(a, b)| a - b).collect(), tc / c);
            }
            return Ok(LaurentPoly { ctx: self.ctx.clone(), terms });
        }
        let a = self.min_exponents();
        let b = d.min_exponents();
        let neg = |v: &[i32]| v.iter().map(|x| -x).collect::<Vec<_>>();
        let mut rem = self.shift(&neg(&a));
        let dd = d.shift(&neg(&b));
        let (lt_d, lc_d) = dd.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut quot = Self::zero(&self.ctx);
        while let Some((lt_r, lc_r)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let diff: Vec<i32> = lt_r.iter().zip(&lt_d).map(|(x, y)| x - y).collect();
            if diff.iter().any(|&x| x < 0) || !(&lc_r % &lc_d).is_zero() {
                return Err(LaurentError::NotExact);
            }
            let c = &lc_r / &lc_d;
            for (e, v) in &dd.terms {
                let ne: Vec<i32> = e.iter().zip(&diff).map(|(x, y)| x + y).collect();
                rem.add_term(ne, -(v * &c));
            }
            quot.add_term(diff, c);
        }
        let back: Vec<i32> = a.iter().zip(&b).map(|(x, y)| x - y).collect();
        Ok(quot.shift(&back))
    }

    /// Coordinatewise minimum of all exponent vectors (zero vector for the zero polynomial).
    pub fn min_exponents(&self) -> Vec<i32> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.ctx.len()];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Evaluate in the tropical semifield: the monomial of coordinatewise minimal exponents.
    pub fn tropical_eval(&self) -> Result<Self, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::Empty);
        }
        Ok(Self::monomial(&self.ctx, self.min_exponents(), 1))
    }

    /// Tropical evaluation that also insists only the listed variables occur.
    pub fn tropical_eval_over(&self, coefficient_vars: &[usize]) -> Result<Self, LaurentError> {
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x != 0 && !coefficient_vars.contains(&i) {
                    return Err(LaurentError::NotCoefficient(self.ctx.names[i].clone()));
                }
            }
        }
        self.tropical_eval()
    }

    /// Substitute `values[i]` for variable `i`; every value must share one target context.
    pub fn substitute(&self, values: &[LaurentPoly]) -> Result<Self, LaurentError> {
        if values.len() != self.ctx.len() {
            return Err(LaurentError::Dimension { expected: self.ctx.len(), got: values.len() });
        }
        let target = match values.first() {
            Some(v) => v.ctx.clone(),
            None => Context::new(Vec::<String>::new()),
        };
        for v in values {
            if !same_ctx(&v.ctx, &target) {
                return Err(LaurentError::ContextMismatch(target.names.clone(), v.ctx.names.clone()));
            }
        }
        let mut cache: HashMap<(usize, i32), LaurentPoly> = HashMap::new();
        let mut out = LaurentPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut t = LaurentPoly::constant(&target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = cache.entry((i, k)) {
                    e.insert(values[i].pow_signed(k as i64)?);
                }
                t = &t * &cache[&(i, k)];
            }
            for (te, tc) in t.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Re-express in another context by mapping variable `i` to `map[i]`,
    /// or to the constant 1 when `map[i]` is `None`.
    pub fn remap(&self, target: &Arc<Context>, map: &[Option<usize>]) -> Self {
        assert_eq!(map.len(), self.ctx.len());
        let mut out = LaurentPoly::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] += k;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Sum of all coefficients, i.e. the value at all variables equal to 1.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.sorted_terms().into_iter().map(|(e, c)| TermJson { coeff: c.to_string(), exponents: e.clone() }).collect()
    }

    fn monomial_text(&self, e: &[i32]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k != 0)
            .map(|(i, &k)| if k == 1 { self.ctx.names[i].clone() } else { format!("{}^{}", self.ctx.names[i], k) })
            .collect();
        parts.join("*")
    }

    fn write_sum(&self, f: &mut String) {
        if self.terms.is_empty() {
            f.push('0');
            return;
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    f.push('-');
                }
            } else {
                f.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.monomial_text(e);
            if mono.is_empty() {
                f.push_str(&mag.to_string());
            } else if mag.is_one() {
                f.push_str(&mono);
            } else {
                f.push_str(&format!("{mag}*{mono}"));
            }
        }
    }

    /// Render with the common denominator pulled out, e.g. `(1 + y1)*x1^-1`.
    pub fn factored_text(&self) -> String {
        let den: Vec<i32> = self.min_exponents().into_iter().map(|x| x.min(0)).collect();
        if self.terms.len() <= 1 || den.iter().all(|&x| x == 0) {
            return self.to_string();
        }
        let num = self.shift(&den.iter().map(|x| -x).collect::<Vec<_>>());
        let mut s = String::from("(");
        num.write_sum(&mut s);
        s.push_str(")*");
        s.push_str(&self.monomial_text(&den));
        s
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_sum(&mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("add across contexts")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("sub across contexts")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("mul across contexts")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect();
        LaurentPoly { ctx: self.ctx.clone(), terms }
    }
}

/// Integer vector of length n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GVector(pub Vec<i64>);

impl GVector {
    pub fn zero(n: usize) -> Self {
        GVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        GVector(v)
    }

    pub fn add(&self, other: &GVector) -> GVector {
        GVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> GVector {
        GVector(self.0.iter().map(|a| a * k).collect())
    }
}

/// Degree of the monomial with exponents `(a, c)` under `deg x_i = e_i`, `deg y_j = -b_j`.
pub fn g_degree(exps: &[i32], b: &ExchangeMatrix) -> Result<GVector, LaurentError> {
    let n = b.cols();
    if b.rows() != n {
        return Err(LaurentError::Dimension { expected: n, got: b.rows() });
    }
    if exps.len() != 2 * n {
        return Err(LaurentError::Dimension { expected: 2 * n, got: exps.len() });
    }
    let mut g: Vec<i64> = exps[..n].iter().map(|&a| a as i64).collect();
    for j in 0..n {
        let c = exps[n + j] as i64;
        if c == 0 {
            continue;
        }
        for (i, gi) in g.iter_mut().enumerate() {
            *gi -= c * b.get(i, j);
        }
    }
    Ok(GVector(g))
}

/// The common g-degree of all terms, if there is one.
pub fn is_g_homogeneous(p: &LaurentPoly, b: &ExchangeMatrix) -> Option<GVector> {
    let mut common: Option<GVector> = None;
    for e in p.terms.keys() {
        let g = g_degree(e, b).ok()?;
        match &common {
            None => common = Some(g),
            Some(c) if *c == g => {}
            Some(_) => return None,
        }
    }
    common
}

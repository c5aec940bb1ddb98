//! Labeled seeds of geometric type, seed mutation and the separation formula.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::laurent::{Context, GVector, LaurentError, LaurentPoly};
use crate::matrix::{ExchangeMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("context has {got} variables but the matrix has {expected} rows")]
    ContextSize { expected: usize, got: usize },
    #[error("top block is not sign-skew-symmetric")]
    NotSignSkewSymmetric,
    #[error("slot {slot} out of range 0..{n}")]
    Slot { slot: usize, n: usize },
    #[error("coefficient matrix has rank {rank}, need {n}")]
    RankDeficient { rank: usize, n: usize },
    #[error("separation formula forms disagree: {0} vs {1}")]
    ModeDisagreement(String, String),
}

/// A seed whose cluster is stored as Laurent expansions in the initial variables.
///
/// Row `i >= n` of the matrix records the exponent of frozen variable `i` in the
/// coefficients, so the coefficient tuple never needs to be stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    ctx: Arc<Context>,
    matrix: ExchangeMatrix,
    cluster: Vec<LaurentPoly>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedJson {
    pub matrix: Vec<Vec<i64>>,
    pub variables: Vec<String>,
    pub cluster: Vec<String>,
}

fn sign_skew_symmetric(b: &ExchangeMatrix) -> bool {
    let n = b.cols();
    (0..n).all(|i| {
        b.get(i, i) == 0
            && (0..n).all(|j| {
                let (x, y) = (b.get(i, j), b.get(j, i));
                (x == 0 && y == 0) || x.signum() == -y.signum() && x != 0
            })
    })
}

impl Seed {
    /// The initial seed with cluster `x1..xn` in a context whose variables match the matrix rows.
    pub fn initial(matrix: ExchangeMatrix, ctx: Arc<Context>) -> Result<Seed, ClusterError> {
        if ctx.len() != matrix.rows() {
            return Err(ClusterError::ContextSize { expected: matrix.rows(), got: ctx.len() });
        }
        if matrix.rows() < matrix.cols() || !sign_skew_symmetric(&matrix.principal_part()) {
            return Err(ClusterError::NotSignSkewSymmetric);
        }
        let cluster = (0..matrix.cols()).map(|i| LaurentPoly::var(&ctx, i)).collect();
        Ok(Seed { ctx, matrix, cluster })
    }

    /// Principal coefficients: identity bottom block, variables `x1..xn, y1..yn`.
    pub fn principal(b: &ExchangeMatrix) -> Result<Seed, ClusterError> {
        let bt = b.extend_principal()?;
        Seed::initial(bt, Context::principal(b.cols()))
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    /// `y_k` as a monomial in the frozen variables.
    pub fn coefficient(&self, k: usize) -> LaurentPoly {
        let n = self.n();
        let mut e = vec![0; self.ctx.len()];
        for i in n..self.matrix.rows() {
            e[i] = self.matrix.get(i, k) as i32;
        }
        LaurentPoly::monomial(&self.ctx, e, 1)
    }

    fn exchange_term(&self, k: usize, sign: i64) -> LaurentPoly {
        let n = self.n();
        let mut t = LaurentPoly::one(&self.ctx);
        let mut frozen = vec![0; self.ctx.len()];
        for i in 0..self.matrix.rows() {
            let e = (sign * self.matrix.get(i, k)).max(0);
            if e == 0 {
                continue;
            }
            if i < n {
                t = &t * &self.cluster[i].pow(e as u32);
            } else {
                frozen[i] = e as i32;
            }
        }
        t.shift(&frozen)
    }

    /// Mutation in direction `k` (0-based). The exchange division must be exact.
    pub fn mutate(&self, k: usize) -> Result<Seed, ClusterError> {
        let matrix = self.matrix.mutate(k)?;
        let num = &self.exchange_term(k, 1) + &self.exchange_term(k, -1);
        let xk = num.exact_div(&self.cluster[k])?;
        let mut cluster = self.cluster.clone();
        cluster[k] = xk;
        Ok(Seed { ctx: self.ctx.clone(), matrix, cluster })
    }

    pub fn mutate_path(&self, path: &[usize]) -> Result<Seed, ClusterError> {
        let mut s = self.clone();
        for &k in path {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            matrix: self.matrix.to_rows(),
            variables: self.ctx.names().to_vec(),
            cluster: self.cluster.iter().map(ToString::to_string).collect(),
        }
    }
}

/// The cluster variable in `slot` after mutating along `path`.
pub fn variable_by_mutation_path(s0: &Seed, path: &[usize], slot: usize) -> Result<LaurentPoly, ClusterError> {
    if slot >= s0.n() {
        return Err(ClusterError::Slot { slot, n: s0.n() });
    }
    Ok(s0.mutate_path(path)?.cluster[slot].clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeparationMode {
    /// `X(x; y) / Trop(F(y))` with `y_j` the frozen monomial of column j.
    YSubstitution,
    /// `F(yhat) x^g / Trop(F(y))` with `yhat_j` the full monomial of column j.
    FHat,
}

fn column_monomial(ctx: &Arc<Context>, b: &ExchangeMatrix, j: usize, from: usize) -> LaurentPoly {
    let mut e = vec![0; ctx.len()];
    for i in from..b.rows() {
        e[i] = b.get(i, j) as i32;
    }
    LaurentPoly::monomial(ctx, e, 1)
}

/// Specialize a principal-coefficient element `X` (with F-polynomial `F` in `y1..yn`
/// and g-vector `g`) to the coefficient system given by the bottom rows of `b_full`.
///
/// Both forms of the formula are computed; they must agree.
pub fn separation_specialize(
    x: &LaurentPoly,
    f: &LaurentPoly,
    g: &GVector,
    b_full: &ExchangeMatrix,
    mode: SeparationMode,
) -> Result<LaurentPoly, ClusterError> {
    let n = b_full.cols();
    let m = b_full.rows();
    if x.ctx().len() != 2 * n {
        return Err(ClusterError::ContextSize { expected: 2 * n, got: x.ctx().len() });
    }
    if f.ctx().len() != n {
        return Err(ClusterError::ContextSize { expected: n, got: f.ctx().len() });
    }
    let rank = b_full.rank();
    if rank < n {
        return Err(ClusterError::RankDeficient { rank, n });
    }
    let out = Context::extended(m);
    let frozen_y: Vec<LaurentPoly> = (0..n).map(|j| column_monomial(&out, b_full, j, n)).collect();
    let hat_y: Vec<LaurentPoly> = (0..n).map(|j| column_monomial(&out, b_full, j, 0)).collect();
    let trop = f.substitute(&frozen_y)?.tropical_eval()?;

    let mut xs: Vec<LaurentPoly> = (0..n).map(|i| LaurentPoly::var(&out, i)).collect();
    xs.extend(frozen_y.iter().cloned());
    let a = x.substitute(&xs)?.divide_by_monomial(&trop)?;

    let mut ge = vec![0; m];
    for (i, &gi) in g.0.iter().enumerate() {
        ge[i] = gi as i32;
    }
    let b = f.substitute(&hat_y)?.shift(&ge).divide_by_monomial(&trop)?;

    if a != b {
        return Err(ClusterError::ModeDisagreement(a.to_string(), b.to_string()));
    }
    Ok(match mode {
        SeparationMode::YSubstitution => a,
        SeparationMode::FHat => b,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingEntry {
    pub leader: Option<Vec<i32>>,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingReport {
    pub entries: Vec<LeadingEntry>,
    pub duplicates: Vec<(usize, usize)>,
    pub passed: bool,
}

/// Check that each element has a unique coefficient-free term, that every other
/// term differs from it by a non-negative combination of the columns of `bt`,
/// and that the leading exponents are pairwise distinct.
pub fn assert_distinct_leading_terms(us: &[LaurentPoly], bt: &ExchangeMatrix) -> LeadingReport {
    let n = bt.cols();
    let m = bt.rows();
    let full_rank = bt.rank() == n;
    let mut entries = Vec::new();
    for u in us {
        let mut failures = Vec::new();
        if u.ctx().len() != m {
            failures.push(format!("context has {} variables, expected {m}", u.ctx().len()));
            entries.push(LeadingEntry { leader: None, failures });
            continue;
        }
        if !full_rank {
            failures.push("matrix columns are dependent".into());
        }
        let free: Vec<&Vec<i32>> = u.terms().map(|(e, _)| e).filter(|e| e[n..].iter().all(|&c| c == 0)).collect();
        if free.len() != 1 {
            failures.push(format!("{} coefficient-free terms", free.len()));
            entries.push(LeadingEntry { leader: None, failures });
            continue;
        }
        let lead = free[0].clone();
        for (e, _) in u.terms() {
            if *e == lead {
                continue;
            }
            let diff: Vec<i64> = e.iter().zip(&lead).map(|(a, b)| (a - b) as i64).collect();
            if bt.nonnegative_combination(&diff).is_none() {
                failures.push(format!("offset {diff:?} is not a non-negative combination of columns"));
            }
        }
        entries.push(LeadingEntry { leader: Some(lead), failures });
    }
    let mut duplicates = Vec::new();
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            if let (Some(a), Some(b)) = (&entries[i].leader, &entries[j].leader) {
                if a[..n] == b[..n] {
                    duplicates.push((i, j));
                }
            }
        }
    }
    let passed = duplicates.is_empty() && entries.iter().all(|e| e.failures.is_empty());
    LeadingReport { entries, duplicates, passed }
}

//! Compound matrices (antisymmetric tensor powers).
//!
//! `∧^k X` is the `C(n,k) × C(n,k)` matrix of `k × k` minors, rows and columns
//! indexed by the `k`-subsets of `{0, …, n−1}` in lexicographic order. It is
//! multiplicative, and its eigenvalues are the `k`-fold products of those of `X`.

use crate::densela::matrix::lu_determinant;
use crate::densela::{sym_eigen, GenMatrix, PdMatrix, SymMatrix};
use crate::error::{Error, Result};

/// Tolerance for the eigenvalue-product check.
pub const COMPOUND_TOL: f64 = 1e-7;

/// Lexicographically ordered `k`-subsets of `{0, …, n−1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompoundIndex {
    pub n: usize,
    pub k: usize,
    pub subsets: Vec<Vec<usize>>,
}

impl CompoundIndex {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!("compound order {k} outside 1..={n}")));
        }
        let mut subsets = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            subsets.push(cur.clone());
            // rightmost position that can still advance
            let Some(pos) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
                break;
            };
            cur[pos] += 1;
            for i in (pos + 1)..k {
                cur[i] = cur[i - 1] + 1;
            }
        }
        Ok(CompoundIndex { n, k, subsets })
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }
}

pub fn compound_matrix(x: &GenMatrix, k: usize) -> Result<GenMatrix> {
    let index = CompoundIndex::new(x.dim(), k)?;
    if k == 1 {
        return Ok(x.clone());
    }
    let size = index.len();
    let mut data = Vec::with_capacity(size * size);
    let mut minor = vec![0.0; k * k];
    for rows in &index.subsets {
        for cols in &index.subsets {
            for (a, &r) in rows.iter().enumerate() {
                for (b, &c) in cols.iter().enumerate() {
                    minor[a * k + b] = x.get(r, c);
                }
            }
            data.push(lu_determinant(minor.clone(), k));
        }
    }
    GenMatrix::new(size, data)
}

/// `∧^k A` for PD `A`, assembled as `∧^k(Q) · diag(k-fold products) · ∧^k(Q)ᵀ`
/// from the spectral factorization of `A`, so the tiny eigenvalues of an
/// ill-conditioned compound keep their relative accuracy.
pub fn compound_pd(a: &PdMatrix, k: usize) -> Result<PdMatrix> {
    let eig = a.eigen();
    let index = CompoundIndex::new(a.dim(), k)?;
    let q = compound_matrix(&eig.q, k)?;
    let lambda = index
        .subsets
        .iter()
        .map(|s| s.iter().map(|&i| eig.lambda[i]).product())
        .collect();
    PdMatrix::from_eigen(q, lambda)
}

/// All `k`-fold products of `values`, descending.
pub fn k_fold_products(values: &[f64], k: usize) -> Result<Vec<f64>> {
    let index = CompoundIndex::new(values.len(), k)?;
    let mut out: Vec<f64> = index
        .subsets
        .iter()
        .map(|s| s.iter().map(|&i| values[i]).product())
        .collect();
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}

/// Checks that the eigenvalues of `∧^k S` are the `k`-fold products of the
/// eigenvalues of `S`, each within `1e-7 · (1 + max |product|)`.
pub fn compound_spectrum_check(s: &SymMatrix, k: usize) -> Result<bool> {
    let c = SymMatrix::from_symmetrized(&compound_matrix(s, k)?);
    let got = sym_eigen(&c)?.lambda;
    let expected = k_fold_products(&sym_eigen(s)?.lambda, k)?;
    let scale = 1.0 + expected.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    Ok(got
        .iter()
        .zip(&expected)
        .all(|(g, e)| (g - e).abs() <= COMPOUND_TOL * scale))
}

//! Eigendecomposition of `GᵀG` from the factor `G`, without forming `GᵀG`.
//!
//! The factors that occur here are graded: `D₁·W·D₂` with `W` orthogonal and
//! `D₁`, `D₂` diagonal (congruences `X^s Y^r X^s`), or a stack of row-graded
//! orthogonal blocks (weighted power sums `Σ αᵢ Aᵢ^p`). Forming the product and
//! diagonalizing it loses every eigenvalue below `ε·‖GᵀG‖`. Householder QR with
//! rows sorted by norm and column pivoting, followed by one-sided Jacobi on
//! `Rᵀ`, keeps the singular values of such factors to high relative accuracy.

use crate::densela::eigen::{EigenDecomposition, MAX_SWEEPS};
use crate::densela::matrix::GenMatrix;
use crate::error::{Error, Result};

/// Row-major `rows × cols` factor.
#[derive(Clone, Debug)]
pub(crate) struct Factor {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Factor {
    pub(crate) fn new(rows: usize, cols: usize) -> Self {
        Factor {
            rows,
            cols,
            data: Vec::with_capacity(rows * cols),
        }
    }

    /// Appends `diag(row_scale) · Qᵀ · diag(col_scale)` as new rows.
    pub(crate) fn push_scaled_transpose(&mut self, row_scale: &[f64], q: &GenMatrix, col_scale: Option<&[f64]>) {
        let n = q.dim();
        debug_assert_eq!(n, self.cols);
        for (i, &ri) in row_scale.iter().enumerate() {
            for j in 0..n {
                let cj = col_scale.map_or(1.0, |c| c[j]);
                self.data.push(ri * q.get(j, i) * cj);
            }
        }
    }

    fn finish(mut self) -> Self {
        self.rows = self.data.len() / self.cols;
        self
    }
}

/// `D₁ · W · D₂` for square `W`.
pub(crate) fn graded_product(d1: &[f64], w: &GenMatrix, d2: &[f64]) -> Factor {
    let n = w.dim();
    let mut data = Vec::with_capacity(n * n);
    for (i, &di) in d1.iter().enumerate() {
        for (j, &dj) in d2.iter().enumerate() {
            data.push(di * w.get(i, j) * dj);
        }
    }
    Factor { rows: n, cols: n, data }
}

/// Eigendecomposition of `GᵀG` (eigenvalues are the squared singular values of
/// `G`, eigenvectors its right singular vectors).
pub(crate) fn gram_eigen(g: Factor) -> Result<EigenDecomposition> {
    let g = g.finish();
    let (m, n) = (g.rows, g.cols);
    if m < n {
        return Err(Error::InvalidParameter(format!("factor has {m} rows but {n} columns")));
    }

    // Sort rows by decreasing norm.
    let mut order: Vec<usize> = (0..m).collect();
    let row_norm = |r: usize| -> f64 { g.data[r * n..(r + 1) * n].iter().map(|v| v * v).sum() };
    let norms: Vec<f64> = (0..m).map(row_norm).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    let mut a: Vec<f64> = Vec::with_capacity(m * n);
    for &r in &order {
        a.extend_from_slice(&g.data[r * n..(r + 1) * n]);
    }

    // Householder QR with column pivoting; column norms are recomputed at each
    // step rather than downdated.
    let mut perm: Vec<usize> = (0..n).collect();
    for j in 0..n {
        let col_norm2 = |a: &[f64], c: usize| -> f64 { (j..m).map(|i| a[i * n + c] * a[i * n + c]).sum() };
        let pivot = (j..n)
            .max_by(|&c1, &c2| col_norm2(&a, c1).total_cmp(&col_norm2(&a, c2)))
            .expect("non-empty range");
        if pivot != j {
            for i in 0..m {
                a.swap(i * n + j, i * n + pivot);
            }
            perm.swap(j, pivot);
        }
        let norm = col_norm2(&a, j).sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[j * n + j];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        // v = x − α e₁, stored in place below the diagonal
        let mut v: Vec<f64> = (j..m).map(|i| a[i * n + j]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for c in (j + 1)..n {
                let dot: f64 = v.iter().enumerate().map(|(k, vk)| vk * a[(j + k) * n + c]).sum();
                let f = 2.0 * dot / vnorm2;
                for (k, vk) in v.iter().enumerate() {
                    a[(j + k) * n + c] -= f * vk;
                }
            }
        }
        a[j * n + j] = alpha;
        for i in (j + 1)..m {
            a[i * n + j] = 0.0;
        }
    }

    // X = Rᵀ; orthogonalize the columns of X (the rows of R).
    let mut x = vec![0.0; n * n];
    for i in 0..n {
        for k in i..n {
            x[k * n + i] = a[i * n + k];
        }
    }
    one_sided_jacobi(&mut x, n)?;

    // Columns of X are now Uσ. Right singular vectors of G are P·U.
    let mut sigma = vec![0.0; n];
    let mut vecs = vec![0.0; n * n];
    for col in 0..n {
        let s: f64 = (0..n).map(|r| x[r * n + col] * x[r * n + col]).sum::<f64>().sqrt();
        if s == 0.0 {
            return Err(Error::NotPositiveDefinite {
                smallest: 0.0,
                largest: f64::NAN,
            });
        }
        sigma[col] = s;
        for r in 0..n {
            vecs[perm[r] * n + col] = x[r * n + col] / s;
        }
    }
    let lambda = sigma.iter().map(|s| s * s).collect();
    Ok(EigenDecomposition::sorted(GenMatrix::from_raw(n, vecs), lambda))
}

fn one_sided_jacobi(x: &mut [f64], n: usize) -> Result<()> {
    let tol = f64::EPSILON * n as f64;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for r in 0..n {
                    let xi = x[r * n + i];
                    let xj = x[r * n + j];
                    alpha += xi * xi;
                    beta += xj * xj;
                    gamma += xi * xj;
                }
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let sgn = if zeta >= 0.0 { 1.0 } else { -1.0 };
                let t = sgn / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for r in 0..n {
                    let xi = x[r * n + i];
                    let xj = x[r * n + j];
                    x[r * n + i] = c * xi - s * xj;
                    x[r * n + j] = s * xi + c * xj;
                }
            }
        }
        if !rotated {
            return Ok(());
        }
    }
    let mut residual = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let d: f64 = (0..n).map(|r| x[r * n + i] * x[r * n + j]).sum();
            residual = residual.max(d.abs());
        }
    }
    Err(Error::NoConvergence {
        sweeps: MAX_SWEEPS,
        residual,
    })
}

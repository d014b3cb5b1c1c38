//! Cyclic Jacobi eigensolver for real symmetric matrices.
//!
//! Rotations use Rutishauser's update, and an off-diagonal entry is annihilated
//! unless `|a_pq| ≤ ε·sqrt(|a_pp·a_qq|)`. That test is stricter than a
//! Frobenius-mass threshold and is what lets Jacobi return small eigenvalues of
//! a well-scaled positive definite matrix to high relative accuracy.

use crate::densela::matrix::{GenMatrix, SymMatrix};
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 50;

/// `S = Q diag(λ) Qᵀ` with λ descending and Q orthogonal.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition {
    /// Columns are eigenvectors.
    pub q: GenMatrix,
    /// Descending.
    pub lambda: Vec<f64>,
}

impl EigenDecomposition {
    /// Sorts descending (stable on the original index) and permutes the
    /// columns of `q` accordingly.
    pub(crate) fn sorted(q: GenMatrix, lambda: Vec<f64>) -> Self {
        let n = lambda.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| lambda[j].total_cmp(&lambda[i]));
        if order.iter().enumerate().all(|(k, &i)| k == i) {
            return EigenDecomposition { q, lambda };
        }
        let mut qs = vec![0.0; n * n];
        for (new_col, &old_col) in order.iter().enumerate() {
            for r in 0..n {
                qs[r * n + new_col] = q.get(r, old_col);
            }
        }
        EigenDecomposition {
            q: GenMatrix::from_raw(n, qs),
            lambda: order.iter().map(|&i| lambda[i]).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    /// `Q diag(f(λ)) Qᵀ`, not symmetrized.
    pub fn reconstruct_with(&self, values: &[f64]) -> GenMatrix {
        let n = self.dim();
        let q = self.q.as_slice();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for k in 0..n {
                    acc += q[i * n + k] * values[k] * q[j * n + k];
                }
                out[i * n + j] = acc;
                out[j * n + i] = acc;
            }
        }
        GenMatrix::from_raw(n, out)
    }

    pub fn reconstruct(&self) -> GenMatrix {
        self.reconstruct_with(&self.lambda)
    }

    /// `‖QᵀQ − I‖_max`.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| self.q.get(k, i) * self.q.get(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

fn off_diagonal_mass(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
pub fn sym_eigen(s: &SymMatrix) -> Result<EigenDecomposition> {
    let n = s.dim();
    let mut a = s.as_slice().to_vec();
    // Work on the exactly symmetric part.
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = v;
            a[j * n + i] = v;
        }
    }
    let mut v = GenMatrix::identity(n).as_slice().to_vec();

    let mut converged = n == 1;
    for _sweep in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                if apq == 0.0 || apq.abs() <= f64::EPSILON * (app.abs() * aqq.abs()).sqrt() {
                    continue;
                }
                rotated = true;
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
                    sgn / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                let tau = sn / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r * n + p];
                    let h = a[r * n + q];
                    let rp = g - sn * (h + g * tau);
                    let rq = h + sn * (g - h * tau);
                    a[r * n + p] = rp;
                    a[p * n + r] = rp;
                    a[r * n + q] = rq;
                    a[q * n + r] = rq;
                }
                for r in 0..n {
                    let g = v[r * n + p];
                    let h = v[r * n + q];
                    v[r * n + p] = g - sn * (h + g * tau);
                    v[r * n + q] = h + sn * (g - h * tau);
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            residual: off_diagonal_mass(&a, n),
        });
    }
    let lambda = (0..n).map(|i| a[i * n + i]).collect();
    Ok(EigenDecomposition::sorted(GenMatrix::from_raw(n, v), lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input_sorts_and_permutes() {
        let e = sym_eigen(&SymMatrix::from_diag(&[1.0, 5.0, 2.0])).unwrap();
        assert_eq!(e.lambda, vec![5.0, 2.0, 1.0]);
        // columns of a permutation matrix
        assert_eq!(e.q.get(1, 0).abs(), 1.0);
        assert_eq!(e.q.get(2, 1).abs(), 1.0);
        assert_eq!(e.q.get(0, 2).abs(), 1.0);
    }

    #[test]
    fn two_by_two_matches_characteristic_polynomial() {
        // λ² − 4λ + 3 = 0
        let e = sym_eigen(&SymMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap()).unwrap();
        assert!((e.lambda[0] - 3.0).abs() < 1e-14);
        assert!((e.lambda[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let e = sym_eigen(&SymMatrix::identity(4)).unwrap();
        assert_eq!(e.lambda, vec![1.0; 4]);
        assert_eq!(e.q, GenMatrix::identity(4));
    }

    #[test]
    fn ties_keep_original_order() {
        let e = sym_eigen(&SymMatrix::from_diag(&[2.0, 2.0, 3.0])).unwrap();
        assert_eq!(e.lambda, vec![3.0, 2.0, 2.0]);
        assert_eq!(e.q.get(2, 0), 1.0);
        assert_eq!(e.q.get(0, 1), 1.0);
        assert_eq!(e.q.get(1, 2), 1.0);
    }

    #[test]
    fn graded_pd_matrix_keeps_small_eigenvalue() {
        // [[1, 1e-8], [1e-8, 1e-12]]: det = 1e-12 - 1e-16, λ_min ≈ det / λ_max
        let s = SymMatrix::from_rows(&[vec![1.0, 1e-8], vec![1e-8, 1e-12]]).unwrap();
        let e = sym_eigen(&s).unwrap();
        let det = 1e-12 - 1e-16;
        assert!(((e.lambda[0] * e.lambda[1]) / det - 1.0).abs() < 1e-13);
    }
}

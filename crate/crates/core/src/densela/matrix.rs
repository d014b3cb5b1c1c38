use std::fmt;
use std::ops::{Deref, Index};

use crate::densela::eigen::{sym_eigen, EigenDecomposition};
use crate::error::{Error, Result};

/// Relative tolerance for the symmetry test, scaled by `1 + max|entry|`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Per-dimension factor of the positive-definiteness threshold:
/// `λ_min > n · PD_RATIO · λ_max`.
pub const PD_RATIO: f64 = 1e-13;

/// Dense real square matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct GenMatrix {
    n: usize,
    data: Vec<f64>,
}

impl GenMatrix {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix(format!("non-finite entry {bad}")));
        }
        Ok(GenMatrix { n, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::new(n, data)
    }

    /// Skips validation; callers guarantee `data.len() == n * n` and finiteness.
    pub(crate) fn from_raw(n: usize, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        GenMatrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        GenMatrix::from_raw(n, vec![0.0; n * n])
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![1.0; n])
    }

    pub fn from_diag(d: &[f64]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, &v) in d.iter().enumerate() {
            m.data[i * n + i] = v;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> GenMatrix {
        let n = self.n;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.data[j * n + i] = self.data[i * n + j];
            }
        }
        t
    }

    fn check_dim(&self, other: &GenMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GenMatrix) -> Result<GenMatrix> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(GenMatrix::from_raw(self.n, data))
    }

    pub fn sub(&self, other: &GenMatrix) -> Result<GenMatrix> {
        self.check_dim(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(GenMatrix::from_raw(self.n, data))
    }

    pub fn scale(&self, s: f64) -> GenMatrix {
        GenMatrix::from_raw(self.n, self.data.iter().map(|v| v * s).collect())
    }

    /// `alpha * self + beta * other`.
    pub fn lincomb(&self, alpha: f64, other: &GenMatrix, beta: f64) -> Result<GenMatrix> {
        self.check_dim(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        Ok(GenMatrix::from_raw(self.n, data))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Largest |a_ij − a_ji|.
    pub fn asymmetry(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in (i + 1)..n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetry() <= SYMMETRY_TOL * (1.0 + self.max_abs())
    }

    /// `(X + Xᵀ) / 2`.
    pub fn symmetric_part(&self) -> GenMatrix {
        let n = self.n;
        let mut s = self.clone();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (self.get(i, j) + self.get(j, i));
                s.set(i, j, v);
                s.set(j, i, v);
            }
        }
        s
    }

    pub fn determinant(&self) -> f64 {
        lu_determinant(self.data.clone(), self.n)
    }

    /// Largest entrywise difference.
    pub fn max_diff(&self, other: &GenMatrix) -> f64 {
        assert_eq!(self.n, other.n, "max_diff on matrices of different size");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Relative entrywise closeness: `max|x−y| ≤ tol · (1 + max(‖x‖max, ‖y‖max))`.
    pub fn approx_eq(&self, other: &GenMatrix, tol: f64) -> bool {
        self.n == other.n && self.max_diff(other) <= tol * (1.0 + self.max_abs().max(other.max_abs()))
    }
}

impl Index<(usize, usize)> for GenMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl fmt::Debug for GenMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GenMatrix({}x{})", self.n, self.n)?;
        for row in self.data.chunks(self.n) {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Matrix product. Fails when the dimensions differ.
pub fn multiply(a: &GenMatrix, b: &GenMatrix) -> Result<GenMatrix> {
    a.check_dim(b)?;
    let n = a.n;
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a.data[i * n + k];
            if aik == 0.0 {
                continue;
            }
            let brow = &b.data[k * n..(k + 1) * n];
            let crow = &mut c[i * n..(i + 1) * n];
            for (cij, bkj) in crow.iter_mut().zip(brow) {
                *cij += aik * bkj;
            }
        }
    }
    Ok(GenMatrix::from_raw(n, c))
}

/// Product of a chain of equally sized matrices.
pub fn multiply_chain(factors: &[&GenMatrix]) -> Result<GenMatrix> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("empty product".into()))?;
    rest.iter().try_fold((*first).clone(), |acc, f| multiply(&acc, f))
}

/// Determinant by LU with partial pivoting; consumes a row-major buffer.
pub(crate) fn lu_determinant(mut a: Vec<f64>, n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&r, &s| a[r * n + col].abs().total_cmp(&a[s * n + col].abs()))
            .unwrap_or(col);
        let pv = a[pivot * n + col];
        if pv == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
            }
            det = -det;
        }
        det *= pv;
        for r in (col + 1)..n {
            let f = a[r * n + col] / pv;
            if f == 0.0 {
                continue;
            }
            for j in (col + 1)..n {
                a[r * n + j] -= f * a[col * n + j];
            }
        }
    }
    det
}

/// Symmetric matrix (within [`SYMMETRY_TOL`]).
#[derive(Clone, PartialEq)]
pub struct SymMatrix(GenMatrix);

impl SymMatrix {
    pub fn new(m: GenMatrix) -> Result<Self> {
        let asym = m.asymmetry();
        if asym > SYMMETRY_TOL * (1.0 + m.max_abs()) {
            return Err(Error::NotSymmetric { asymmetry: asym });
        }
        Ok(SymMatrix(m))
    }

    /// Symmetrizes unconditionally; used on outputs of the functional calculus.
    pub fn from_symmetrized(m: &GenMatrix) -> Self {
        SymMatrix(m.symmetric_part())
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(GenMatrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Self {
        SymMatrix(GenMatrix::identity(n))
    }

    pub fn from_diag(d: &[f64]) -> Self {
        SymMatrix(GenMatrix::from_diag(d))
    }

    pub fn as_gen(&self) -> &GenMatrix {
        &self.0
    }

    pub fn into_gen(self) -> GenMatrix {
        self.0
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix> {
        Ok(SymMatrix(self.0.add(&other.0)?))
    }

    pub fn lincomb(&self, alpha: f64, other: &SymMatrix, beta: f64) -> Result<SymMatrix> {
        Ok(SymMatrix(self.0.lincomb(alpha, &other.0, beta)?))
    }

    pub fn scale(&self, s: f64) -> SymMatrix {
        SymMatrix(self.0.scale(s))
    }
}

impl Deref for SymMatrix {
    type Target = GenMatrix;
    fn deref(&self) -> &GenMatrix {
        &self.0
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sym{:?}", self.0)
    }
}

/// Positive definite matrix together with its eigendecomposition.
///
/// Every spectral operation on a `PdMatrix` goes through the cached
/// decomposition, so chained functional calculus (`(A^p)^(1/p)`, congruences,
/// power sums) never re-diagonalizes a rounded reconstruction.
#[derive(Clone)]
pub struct PdMatrix {
    sym: SymMatrix,
    eig: EigenDecomposition,
}

impl PdMatrix {
    /// Validates symmetry and the threshold `λ_min > n · 1e-13 · λ_max`.
    pub fn new(sym: SymMatrix) -> Result<Self> {
        let eig = sym_eigen(&sym)?;
        let n = sym.dim() as f64;
        let largest = eig.lambda[0];
        let smallest = *eig.lambda.last().expect("n >= 1");
        if !(smallest > 0.0 && smallest > n * PD_RATIO * largest) {
            return Err(Error::NotPositiveDefinite { smallest, largest });
        }
        Ok(PdMatrix { sym, eig })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(SymMatrix::from_rows(rows)?)
    }

    pub fn from_gen(m: GenMatrix) -> Result<Self> {
        Self::new(SymMatrix::new(m)?)
    }

    /// Builds `Q diag(λ) Qᵀ` from a known spectral factorization with a strictly
    /// positive spectrum. The factorization is kept as the authoritative
    /// description of the matrix.
    pub fn from_eigen(q: GenMatrix, lambda: Vec<f64>) -> Result<Self> {
        if q.dim() != lambda.len() {
            return Err(Error::DimensionMismatch {
                expected: q.dim(),
                found: lambda.len(),
            });
        }
        if let Some(&bad) = lambda.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::NotPositiveDefinite {
                smallest: bad,
                largest: lambda.iter().cloned().fold(f64::NAN, f64::max),
            });
        }
        let eig = EigenDecomposition::sorted(q, lambda);
        let sym = SymMatrix::from_symmetrized(&eig.reconstruct());
        Ok(PdMatrix { sym, eig })
    }

    pub fn identity(n: usize) -> Self {
        PdMatrix {
            sym: SymMatrix::identity(n),
            eig: EigenDecomposition {
                q: GenMatrix::identity(n),
                lambda: vec![1.0; n],
            },
        }
    }

    /// Diagonal matrix with positive entries; the eigendecomposition is exact.
    pub fn from_diag(d: &[f64]) -> Result<Self> {
        Self::from_eigen(GenMatrix::identity(d.len()), d.to_vec())
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eig
    }

    /// Descending eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.lambda
    }

    pub fn as_sym(&self) -> &SymMatrix {
        &self.sym
    }

    pub fn log_det(&self) -> f64 {
        self.eig.lambda.iter().map(|v| v.ln()).sum()
    }
}

impl Deref for PdMatrix {
    type Target = SymMatrix;
    fn deref(&self) -> &SymMatrix {
        &self.sym
    }
}

impl fmt::Debug for PdMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pd{:?}", self.sym.as_gen())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> GenMatrix {
        GenMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn multiply_identity() {
        let a = m(&[&[1.0, 2.0], &[3.0, 4.0]]);
        assert_eq!(multiply(&GenMatrix::identity(2), &a).unwrap(), a);
    }

    #[test]
    fn multiply_diagonal() {
        let c = multiply(&GenMatrix::from_diag(&[2.0, 3.0]), &GenMatrix::from_diag(&[5.0, 7.0])).unwrap();
        assert_eq!(c, GenMatrix::from_diag(&[10.0, 21.0]));
    }

    #[test]
    fn multiply_nilpotent() {
        let x = m(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(multiply(&x, &x).unwrap(), GenMatrix::zeros(2));
    }

    #[test]
    fn multiply_rejects_mismatch() {
        let err = multiply(&GenMatrix::identity(2), &GenMatrix::identity(3)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn rejects_non_finite_and_empty() {
        assert!(GenMatrix::new(1, vec![f64::NAN]).is_err());
        assert!(GenMatrix::new(0, vec![]).is_err());
        assert!(GenMatrix::from_rows(&[vec![1.0, 2.0], vec![1.0]]).is_err());
    }

    #[test]
    fn symmetry_tolerance() {
        assert!(SymMatrix::new(m(&[&[1.0, 2.0], &[2.0 + 1e-13, 1.0]])).is_ok());
        assert!(matches!(
            SymMatrix::new(m(&[&[1.0, 2.0], &[2.1, 1.0]])),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn pd_threshold() {
        assert!(PdMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).is_ok());
        assert!(matches!(
            PdMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]),
            Err(Error::NotPositiveDefinite { .. })
        ));
        // below n * 1e-13 * λ_max
        assert!(PdMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1e-14]]).is_err());
    }

    #[test]
    fn determinant_by_lu() {
        let a = m(&[&[0.0, 2.0, 1.0], &[1.0, 1.0, 0.0], &[3.0, 0.0, 1.0]]);
        // cofactor expansion along the first row: 0 - 2*(1-0) + 1*(0-3) = -5
        assert!((a.determinant() + 5.0).abs() < 1e-14);
        assert_eq!(GenMatrix::zeros(3).determinant(), 0.0);
    }
}

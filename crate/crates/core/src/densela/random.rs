use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::densela::matrix::{GenMatrix, PdMatrix, SymMatrix};
use crate::error::{Error, Result};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Orthogonal matrix from Gram–Schmidt (two passes) on the columns of a
/// standard-normal matrix.
pub fn random_orthogonal<R: Rng>(n: usize, rng: &mut R) -> GenMatrix {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        for _ in 0..2 {
            for c in &cols {
                let d: f64 = c.iter().zip(&v).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(c).for_each(|(vi, ci)| *vi -= d * ci);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        // a draw inside the span of the previous columns is redrawn
        if norm > 1e-8 {
            v.iter_mut().for_each(|x| *x /= norm);
            cols.push(v);
        }
    }
    let mut data = vec![0.0; n * n];
    for (j, c) in cols.iter().enumerate() {
        for (i, v) in c.iter().enumerate() {
            data[i * n + j] = *v;
        }
    }
    GenMatrix::from_raw(n, data)
}

/// Seeded PD matrix `Q diag(λ) Qᵀ` with `λ` log-uniform in
/// `[10^-c, 10^c]` for `c = cond_exponent`.
pub fn random_pd(n: usize, cond_exponent: f64, seed: u64) -> Result<PdMatrix> {
    let mut rng = seeded_rng(seed);
    random_pd_with(n, cond_exponent, &mut rng)
}

pub fn random_pd_with<R: Rng>(n: usize, cond_exponent: f64, rng: &mut R) -> Result<PdMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be at least 1".into()));
    }
    if !(cond_exponent.is_finite() && cond_exponent >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "cond_exponent must be finite and nonnegative, got {cond_exponent}"
        )));
    }
    let q = random_orthogonal(n, rng);
    let lambda = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            10f64.powf(cond_exponent * (2.0 * u - 1.0))
        })
        .collect();
    PdMatrix::from_eigen(q, lambda)
}

/// Symmetric matrix with standard-normal entries on and above the diagonal.
pub fn random_symmetric<R: Rng>(n: usize, rng: &mut R) -> SymMatrix {
    let mut m = GenMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let v: f64 = rng.sample(StandardNormal);
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    SymMatrix::from_symmetrized(&m)
}

//! Means of positive definite matrices.
//!
//! Every mean is assembled from congruences and weighted power sums of the
//! inputs' cached eigendecompositions (see [`pd_congruence`] and
//! [`pd_weighted_power_sum`]), so the spectra of the results keep relative
//! accuracy even when the intermediate products are badly conditioned.

use crate::densela::{
    multiply, pd_congruence, pd_log, pd_power, pd_weighted_power_sum, sym_exp, GenMatrix, PdMatrix, SymMatrix,
};
use crate::error::{Error, Result};

/// Tolerance on `Σ αᵢ = 1`.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Nonnegative weights summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::InvalidParameter("empty weight vector".into()));
        }
        if alphas.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "negative or non-finite weight in {alphas:?}"
            )));
        }
        let sum: f64 = alphas.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidParameter(format!("weights sum to {sum}, not 1")));
        }
        Ok(WeightVector(alphas))
    }

    pub fn uniform(m: usize) -> Result<Self> {
        Self::new(vec![1.0 / m as f64; m])
    }

    /// `(1 − t, t)`.
    pub fn pair(t: f64) -> Result<Self> {
        check_t(t)?;
        Self::new(vec![1.0 - t, t])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// Interpolation weight `t ∈ [0, 1]` and exponent `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeanParams {
    pub t: f64,
    pub p: f64,
}

impl MeanParams {
    pub fn new(t: f64, p: f64) -> Result<Self> {
        check_t(t)?;
        if !p.is_finite() {
            return Err(Error::InvalidParameter(format!("p = {p} is not finite")));
        }
        Ok(MeanParams { t, p })
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} outside [0, 1]")));
    }
    Ok(())
}

fn check_pair(a: &PdMatrix, b: &PdMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

/// If the weights sum to one and every matrix carrying weight is the same,
/// that matrix (every mean is idempotent).
fn collapsed<'a>(mats: &[&'a PdMatrix], weights: &[f64]) -> Option<&'a PdMatrix> {
    let mut live = mats.iter().zip(weights).filter(|(_, w)| **w != 0.0).map(|(m, _)| *m);
    let first = live.next()?;
    let total: f64 = weights.iter().sum();
    (total == 1.0 && live.all(|m| m.as_gen() == first.as_gen())).then_some(first)
}

/// `A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}`.
pub fn geometric_mean(a: &PdMatrix, b: &PdMatrix, t: f64) -> Result<PdMatrix> {
    check_t(t)?;
    check_pair(a, b)?;
    if t == 0.0 {
        return Ok(a.clone());
    }
    if t == 1.0 || a.as_gen() == b.as_gen() {
        return Ok(b.clone());
    }
    let inner = pd_congruence(a, -0.5, b, 1.0)?;
    pd_congruence(a, 0.5, &pd_power(&inner, t)?, 1.0)
}

/// `((1 − t) A^p + t B^p)^{1/p}`, with the log-Euclidean mean at `p = 0`.
pub fn power_mean(a: &PdMatrix, b: &PdMatrix, t: f64, p: f64) -> Result<PdMatrix> {
    let params = MeanParams::new(t, p)?;
    check_pair(a, b)?;
    power_sum_root(&[a, b], &[1.0 - params.t, params.t], params.p)
}

/// `exp((1 − t) log A + t log B)`.
pub fn log_euclidean(a: &PdMatrix, b: &PdMatrix, t: f64) -> Result<PdMatrix> {
    check_t(t)?;
    check_pair(a, b)?;
    weighted_log_euclidean(&[a, b], &[1.0 - t, t])
}

/// `(1 − t) A + t B`.
pub fn arithmetic_path(a: &PdMatrix, b: &PdMatrix, t: f64) -> Result<PdMatrix> {
    check_t(t)?;
    check_pair(a, b)?;
    let w = [1.0 - t, t];
    if let Some(m) = collapsed(&[a, b], &w) {
        return Ok(m.clone());
    }
    pd_weighted_power_sum(&[a, b], &w, 1.0)
}

/// `(B^{tp/2} A^{(1−t)p} B^{tp/2})^{1/p}` for `p > 0`.
pub fn sandwich_mean(a: &PdMatrix, b: &PdMatrix, t: f64, p: f64) -> Result<PdMatrix> {
    check_t(t)?;
    check_pair(a, b)?;
    if !(p.is_finite() && p > 0.0) {
        return Err(Error::InvalidParameter(format!("sandwich mean needs p > 0, got {p}")));
    }
    let inner = pd_congruence(b, 0.5 * t * p, a, (1.0 - t) * p)?;
    pd_power(&inner, 1.0 / p)
}

/// `A^{1−t} B^t`, in general not symmetric.
pub fn cross_term(a: &PdMatrix, b: &PdMatrix, t: f64) -> Result<GenMatrix> {
    check_t(t)?;
    check_pair(a, b)?;
    let (x, y) = (pd_power(a, 1.0 - t)?, pd_power(b, t)?);
    multiply(&x, &y)
}

/// `(X + Xᵀ) / 2`.
pub fn hermitian_part(x: &GenMatrix) -> SymMatrix {
    SymMatrix::from_symmetrized(x)
}

/// `(Σ αᵢ Aᵢ^p)^{1/p}`, with `exp(Σ αᵢ log Aᵢ)` at `p = 0`.
pub fn power_mean_multi(mats: &[&PdMatrix], w: &WeightVector, p: f64) -> Result<PdMatrix> {
    if !p.is_finite() {
        return Err(Error::InvalidParameter(format!("p = {p} is not finite")));
    }
    power_sum_root(mats, w.as_slice(), p)
}

/// `exp(Σ αᵢ log Aᵢ)`.
pub fn log_euclidean_multi(mats: &[&PdMatrix], w: &WeightVector) -> Result<PdMatrix> {
    weighted_log_euclidean(mats, w.as_slice())
}

/// `(Σ wᵢ Aᵢ^p)^{1/p}` for arbitrary nonnegative weights (not necessarily
/// summing to one). At `p = 0` the weights must sum to one and the
/// log-Euclidean limit is returned.
pub fn power_sum_root(mats: &[&PdMatrix], weights: &[f64], p: f64) -> Result<PdMatrix> {
    if p == 0.0 {
        return weighted_log_euclidean(mats, weights);
    }
    crate::densela::funcs::check_family(mats, weights)?;
    if let Some(m) = collapsed(mats, weights) {
        return Ok(m.clone());
    }
    pd_power(&pd_weighted_power_sum(mats, weights, p)?, 1.0 / p)
}

fn weighted_log_euclidean(mats: &[&PdMatrix], weights: &[f64]) -> Result<PdMatrix> {
    let n = crate::densela::funcs::check_family(mats, weights)?;
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::InvalidParameter(format!(
            "log-Euclidean weights sum to {sum}, not 1"
        )));
    }
    if let Some(m) = collapsed(mats, weights) {
        return Ok(m.clone());
    }
    let mut h = GenMatrix::zeros(n);
    for (a, &w) in mats.iter().zip(weights) {
        if w != 0.0 {
            h = h.lincomb(1.0, &pd_log(a), w)?;
        }
    }
    sym_exp(&SymMatrix::from_symmetrized(&h))
}

/// The orthogonal `U` with `A #_{1/2} B = A^{1/2} U B^{1/2}`:
/// `U = A^{-1/2} (A #_{1/2} B) B^{-1/2}`.
pub fn geometric_mean_unitary_factor(a: &PdMatrix, b: &PdMatrix) -> Result<GenMatrix> {
    let g = geometric_mean(a, b, 0.5)?;
    let (ai, bi) = (pd_power(a, -0.5)?, pd_power(b, -0.5)?);
    multiply(&multiply(&ai, &g)?, &bi)
}

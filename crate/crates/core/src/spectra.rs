//! Spectra, unitarily invariant norms and majorization orders.
//!
//! Ky Fan dominance (`‖X‖_(k) ≤ ‖Y‖_(k)` for every `k`) is equivalent to
//! `|||X||| ≤ |||Y|||` for every unitarily invariant norm, so norm-level
//! inequalities are checked over the full Ky Fan family.

use serde::Serialize;

use crate::densela::{pd_congruence, singular_values, sym_eigen, GenMatrix, PdMatrix, SymMatrix};
use crate::error::{Error, Result};

/// Default relative tolerance for majorization verdicts.
pub const MAJORIZATION_TOL: f64 = 1e-9;

/// Spectra are clamped here before taking logarithms.
pub const LOG_FLOOR: f64 = 1e-300;

/// Descending real vector (eigenvalues or singular values).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts into descending order.
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum(values)
    }

    pub(crate) fn from_descending(values: Vec<f64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] >= w[1]));
        Spectrum(values)
    }

    /// Singular values of a symmetric matrix: `|λ|`, descending.
    pub fn singular_of_symmetric(s: &SymMatrix) -> Result<Self> {
        Ok(Self::new(sym_eigen(s)?.lambda.iter().map(|l| l.abs()).collect()))
    }

    /// For a PD matrix singular values and eigenvalues coincide.
    pub fn of_pd(a: &PdMatrix) -> Self {
        Spectrum(a.eigenvalues().to_vec())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Spectrum {
        Spectrum::new(self.0.iter().map(|&v| f(v)).collect())
    }

    /// Sum of the `k` largest entries.
    pub fn ky_fan(&self, k: usize) -> Result<f64> {
        if k == 0 || k > self.len() {
            return Err(Error::InvalidParameter(format!(
                "Ky Fan index {k} outside 1..={}",
                self.len()
            )));
        }
        Ok(self.0[..k].iter().sum())
    }

    /// `ℓ_p` norm of the entries; `p = ∞` gives the largest magnitude.
    pub fn schatten(&self, p: f64) -> Result<f64> {
        if p.is_nan() || p < 1.0 {
            return Err(Error::InvalidParameter(format!("Schatten exponent {p} < 1")));
        }
        if p.is_infinite() {
            return Ok(self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs())));
        }
        let top = self.0.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if top == 0.0 {
            return Ok(0.0);
        }
        let s: f64 = self.0.iter().map(|v| (v.abs() / top).powf(p)).sum();
        Ok(top * s.powf(1.0 / p))
    }

    pub fn partial_sums(&self) -> Vec<f64> {
        self.0
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect()
    }

    /// Partial sums of logarithms, i.e. logs of the partial products.
    pub fn partial_log_sums(&self) -> Result<Vec<f64>> {
        if let Some(&bad) = self.0.iter().find(|v| v.is_nan() || **v <= 0.0) {
            return Err(Error::NonPositiveSpectrum(bad));
        }
        Ok(self
            .0
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v.max(LOG_FLOOR).ln();
                Some(*acc)
            })
            .collect())
    }
}

pub fn eigenvalues_desc(s: &SymMatrix) -> Result<Spectrum> {
    Ok(Spectrum::from_descending(sym_eigen(s)?.lambda))
}

/// Eigenvalues of `AB`, computed as those of the symmetric form `A^{1/2} B A^{1/2}`.
pub fn product_eigenvalues(a: &PdMatrix, b: &PdMatrix) -> Result<Spectrum> {
    Ok(Spectrum::of_pd(&pd_congruence(a, 0.5, b, 1.0)?))
}

pub fn ky_fan_norm(x: &GenMatrix, k: usize) -> Result<f64> {
    singular_values(x)?.ky_fan(k)
}

pub fn schatten_norm(x: &GenMatrix, p: f64) -> Result<f64> {
    singular_values(x)?.schatten(p)
}

/// Outcome of a majorization test with one slack per prefix length `k`
/// (positive = satisfied).
#[derive(Clone, Debug, PartialEq)]
pub struct Majorization {
    pub holds: bool,
    pub margins: Vec<f64>,
    /// Prefix quantities of the smaller side (sums or log-sums).
    pub lhs: Vec<f64>,
    /// Prefix quantities of the larger side.
    pub rhs: Vec<f64>,
}

impl Majorization {
    /// Index of the tightest prefix.
    pub fn worst(&self) -> (usize, f64) {
        self.margins
            .iter()
            .cloned()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap_or((0, f64::INFINITY))
    }
}

fn check_lengths(x: &Spectrum, y: &Spectrum) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(())
}

/// `x ≺_w y`: `Σ_{i≤k} x_i ≤ Σ_{i≤k} y_i + tol·scale` for all `k`, with
/// `scale = 1 + max(|Σx|, |Σy|)`. Margins are normalized by `scale`.
pub fn weak_majorize(x: &Spectrum, y: &Spectrum, tol: f64) -> Result<Majorization> {
    check_lengths(x, y)?;
    let (sx, sy) = (x.partial_sums(), y.partial_sums());
    let scale = 1.0
        + sx.last()
            .map_or(0.0, |v| v.abs())
            .max(sy.last().map_or(0.0, |v| v.abs()));
    let margins: Vec<f64> = sx.iter().zip(&sy).map(|(a, b)| (b - a) / scale).collect();
    Ok(Majorization {
        holds: margins.iter().all(|m| *m >= -tol),
        margins,
        lhs: sx,
        rhs: sy,
    })
}

/// `x ≺ y`: weak majorization plus equal totals.
pub fn majorize(x: &Spectrum, y: &Spectrum, tol: f64) -> Result<Majorization> {
    let mut w = weak_majorize(x, y, tol)?;
    if let (Some(a), Some(b)) = (w.lhs.last(), w.rhs.last()) {
        let scale = 1.0 + a.abs().max(b.abs());
        let gap = (a - b).abs() / scale;
        w.holds &= gap <= tol;
    }
    Ok(w)
}

/// `x ≺_wlog y` on log partial sums; margins are `Σ log y − Σ log x` per prefix.
pub fn weak_log_majorize(x: &Spectrum, y: &Spectrum, tol: f64) -> Result<Majorization> {
    check_lengths(x, y)?;
    let (lx, ly) = (x.partial_log_sums()?, y.partial_log_sums()?);
    let margins: Vec<f64> = lx.iter().zip(&ly).map(|(a, b)| b - a).collect();
    Ok(Majorization {
        holds: margins.iter().all(|m| *m >= -tol),
        margins,
        lhs: lx,
        rhs: ly,
    })
}

/// `x ≺_log y`: weak log majorization plus equal determinants
/// (`|Σ log x − Σ log y| ≤ tol`).
pub fn log_majorize(x: &Spectrum, y: &Spectrum, tol: f64) -> Result<Majorization> {
    let mut w = weak_log_majorize(x, y, tol)?;
    if let (Some(a), Some(b)) = (w.lhs.last(), w.rhs.last()) {
        w.holds &= (a - b).abs() <= tol;
    }
    Ok(w)
}

/// Loewner order test `a ≤ b`; the margin is `λ_min(b − a)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LoewnerVerdict {
    pub holds: bool,
    pub margin: f64,
    /// `‖b − a‖_max`, the scale the tolerance is relative to.
    pub scale: f64,
}

pub fn loewner_leq(a: &SymMatrix, b: &SymMatrix, tol: f64) -> Result<LoewnerVerdict> {
    let diff = SymMatrix::from_symmetrized(&b.sub(a)?);
    let eig = sym_eigen(&diff)?;
    let margin = *eig.lambda.last().expect("n >= 1");
    let scale = diff.max_abs();
    Ok(LoewnerVerdict {
        holds: margin >= -tol * (1.0 + scale),
        margin,
        scale,
    })
}

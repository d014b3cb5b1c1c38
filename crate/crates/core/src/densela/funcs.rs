use crate::densela::eigen::sym_eigen;
use crate::densela::graded::{graded_product, gram_eigen, Factor};
use crate::densela::matrix::{multiply, GenMatrix, PdMatrix, SymMatrix, PD_RATIO};
use crate::error::{Error, Result};
use crate::spectra::Spectrum;

/// Relative slack for the semidefinite test.
pub const PSD_TOL: f64 = 1e-9;

/// `Q diag(f(λ)) Qᵀ`, symmetrized.
pub fn apply_spectral_fn<F>(s: &SymMatrix, f: F) -> Result<SymMatrix>
where
    F: Fn(f64) -> f64,
{
    let eig = sym_eigen(s)?;
    let values = eig
        .lambda
        .iter()
        .map(|&l| {
            let v = f(l);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::UndefinedSpectralFunction { eigenvalue: l })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SymMatrix::from_symmetrized(&eig.reconstruct_with(&values)))
}

/// `A^p` for any real `p`; `A^0 = I` exactly.
pub fn pd_power(a: &PdMatrix, p: f64) -> Result<PdMatrix> {
    if !p.is_finite() {
        return Err(Error::InvalidParameter(format!("exponent {p} is not finite")));
    }
    if p == 0.0 {
        return Ok(PdMatrix::identity(a.dim()));
    }
    if p == 1.0 {
        return Ok(a.clone());
    }
    let eig = a.eigen();
    PdMatrix::from_eigen(eig.q.clone(), eig.lambda.iter().map(|l| l.powf(p)).collect())
}

pub fn pd_log(a: &PdMatrix) -> SymMatrix {
    let eig = a.eigen();
    let logs: Vec<f64> = eig.lambda.iter().map(|l| l.ln()).collect();
    SymMatrix::from_symmetrized(&eig.reconstruct_with(&logs))
}

pub fn sym_exp(h: &SymMatrix) -> Result<PdMatrix> {
    let eig = sym_eigen(h)?;
    PdMatrix::from_eigen(eig.q, eig.lambda.iter().map(|l| l.exp()).collect())
}

/// `X^s · Y^r · X^s`, diagonalized through the graded factor
/// `Λ_Y^{r/2} (Q_Yᵀ Q_X) Λ_X^s`.
pub fn pd_congruence(outer: &PdMatrix, s: f64, inner: &PdMatrix, r: f64) -> Result<PdMatrix> {
    if outer.dim() != inner.dim() {
        return Err(Error::DimensionMismatch {
            expected: outer.dim(),
            found: inner.dim(),
        });
    }
    let (ex, ey) = (outer.eigen(), inner.eigen());
    let w = multiply(&ey.q.transpose(), &ex.q)?;
    let d1: Vec<f64> = ey.lambda.iter().map(|l| l.powf(0.5 * r)).collect();
    let d2: Vec<f64> = ex.lambda.iter().map(|l| l.powf(s)).collect();
    let g = gram_eigen(graded_product(&d1, &w, &d2))?;
    PdMatrix::from_eigen(multiply(&ex.q, &g.q)?, g.lambda)
}

/// `Σ wᵢ Aᵢ^p` for nonnegative weights with at least one positive,
/// diagonalized through the stacked factor `[√wᵢ Λᵢ^{p/2} Qᵢᵀ]`.
pub fn pd_weighted_power_sum(mats: &[&PdMatrix], weights: &[f64], p: f64) -> Result<PdMatrix> {
    let n = check_family(mats, weights)?;
    let mut f = Factor::new(0, n);
    for (a, &w) in mats.iter().zip(weights) {
        if w == 0.0 {
            continue;
        }
        let eig = a.eigen();
        let scale: Vec<f64> = eig.lambda.iter().map(|l| w.sqrt() * l.powf(0.5 * p)).collect();
        f.push_scaled_transpose(&scale, &eig.q, None);
    }
    let g = gram_eigen(f)?;
    PdMatrix::from_eigen(g.q, g.lambda)
}

pub(crate) fn check_family(mats: &[&PdMatrix], weights: &[f64]) -> Result<usize> {
    let first = mats
        .first()
        .ok_or_else(|| Error::InvalidParameter("empty matrix family".into()))?;
    if mats.len() != weights.len() {
        return Err(Error::DimensionMismatch {
            expected: mats.len(),
            found: weights.len(),
        });
    }
    let n = first.dim();
    if let Some(bad) = mats.iter().find(|a| a.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) || weights.iter().all(|w| *w == 0.0) {
        return Err(Error::InvalidParameter(format!("invalid weights {weights:?}")));
    }
    Ok(n)
}

/// Singular values as square roots of the (clamped) eigenvalues of `XᵀX`.
pub fn singular_values(x: &GenMatrix) -> Result<Spectrum> {
    let gram = multiply(&x.transpose(), x)?;
    let eig = sym_eigen(&SymMatrix::from_symmetrized(&gram))?;
    Ok(Spectrum::from_descending(
        eig.lambda.iter().map(|l| l.max(0.0).sqrt()).collect(),
    ))
}

/// Verdict of a definiteness test; `margin` is the smallest eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Definiteness {
    pub holds: bool,
    pub margin: f64,
}

/// `λ_min > −1e-9 · (1 + max|λ|)`.
pub fn is_positive_semidefinite(s: &SymMatrix) -> Result<Definiteness> {
    let eig = sym_eigen(s)?;
    let smallest = *eig.lambda.last().expect("n >= 1");
    let largest_abs = eig.lambda[0].abs().max(smallest.abs());
    Ok(Definiteness {
        holds: smallest > -PSD_TOL * (1.0 + largest_abs),
        margin: smallest,
    })
}

/// Strict test with the `PdMatrix` threshold `λ_min > n · 1e-13 · λ_max`.
pub fn is_positive_definite(s: &SymMatrix) -> Result<Definiteness> {
    let eig = sym_eigen(s)?;
    let smallest = *eig.lambda.last().expect("n >= 1");
    let n = s.dim() as f64;
    Ok(Definiteness {
        holds: smallest > 0.0 && smallest > n * PD_RATIO * eig.lambda[0],
        margin: smallest,
    })
}

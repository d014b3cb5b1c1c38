use serde::Serialize;

use crate::densela::PdMatrix;
use crate::error::Result;
use crate::means::{geometric_mean, log_euclidean};

/// Acceptance band for `λ₂` of the log-Euclidean midpoint of the fixed pair.
pub const LOGEUC_BAND: (f64, f64) = (0.9801, 0.9811);

/// Spectral data of the fixed 2×2 pair at `t = 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub lambda2_geo: f64,
    pub lambda2_logeuc: f64,
    pub lambda1_geo: f64,
    pub det_geo: f64,
}

impl Counterexample {
    /// Both documented values inside their bands.
    pub fn holds(&self) -> bool {
        (self.lambda2_geo - 1.0).abs() <= 1e-9 && (LOGEUC_BAND.0..=LOGEUC_BAND.1).contains(&self.lambda2_logeuc)
    }
}

/// `A = diag(2, 1)`, `B = [[3, 3], [3, 9/2]]`.
pub fn paper_pair() -> Result<(PdMatrix, PdMatrix)> {
    let a = PdMatrix::from_diag(&[2.0, 1.0])?;
    let b = PdMatrix::from_rows(&[vec![3.0, 3.0], vec![3.0, 4.5]])?;
    Ok((a, b))
}

/// `λ₂(A #_{1/2} B) = 1` while `λ₂(exp((log A + log B)/2)) ≈ 0.9806`, so the
/// log-majorization between the two cannot be strengthened to pointwise
/// domination of eigenvalues.
pub fn paper_counterexample() -> Result<Counterexample> {
    let (a, b) = paper_pair()?;
    let g = geometric_mean(&a, &b, 0.5)?;
    let l = log_euclidean(&a, &b, 0.5)?;
    let (lg, ll) = (g.eigenvalues(), l.eigenvalues());
    Ok(Counterexample {
        lambda2_geo: lg[1],
        lambda2_logeuc: ll[1],
        lambda1_geo: lg[0],
        det_geo: lg[0] * lg[1],
    })
}

use std::fmt;

use serde::{Serialize, Serializer};

use super::{PropertyId, PropertyResult, Status};
use crate::spectra::Spectrum;

/// What a sub-inequality compares.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormId {
    KyFan(usize),
    Schatten(f64),
    /// j-th eigenvalue (1-based).
    Eig(usize),
    /// Prefix of length k of a weak majorization.
    WeakMaj(usize),
    /// Prefix of length k of a (weak) log-majorization.
    LogMaj(usize),
    LogDet,
    Trace,
    Loewner,
    Psd,
    /// Entrywise comparison of k-th compounds.
    Compound(usize),
    None,
}

impl fmt::Display for NormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormId::KyFan(k) => write!(f, "KyFan:{k}"),
            NormId::Schatten(p) if p.is_infinite() => write!(f, "Schatten:inf"),
            NormId::Schatten(p) => write!(f, "Schatten:{p}"),
            NormId::Eig(j) => write!(f, "Eig:{j}"),
            NormId::WeakMaj(k) => write!(f, "WeakMaj:{k}"),
            NormId::LogMaj(k) => write!(f, "LogMaj:{k}"),
            NormId::LogDet => write!(f, "LogDet"),
            NormId::Trace => write!(f, "Trace"),
            NormId::Loewner => write!(f, "Loewner"),
            NormId::Psd => write!(f, "Psd"),
            NormId::Compound(k) => write!(f, "Compound:{k}"),
            NormId::None => write!(f, "none"),
        }
    }
}

impl Serialize for NormId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Where the worst margin of a property was attained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Witness {
    /// Which link of the property's chain (0-based), when it has several.
    pub link: usize,
    pub t: Option<f64>,
    pub p: Option<f64>,
    pub norm_id: NormId,
}

impl Witness {
    pub fn new(link: usize, t: Option<f64>, p: Option<f64>, norm_id: NormId) -> Self {
        Witness { link, t, p, norm_id }
    }
}

/// Running minimum over the sub-inequalities of one property.
pub(crate) struct Tracker {
    tol: f64,
    checks: usize,
    worst: Option<(f64, Witness, f64, f64)>,
    note: Option<String>,
}

pub(crate) fn normalized(lhs: f64, rhs: f64) -> f64 {
    (rhs - lhs) / (1.0 + lhs.abs().max(rhs.abs()))
}

impl Tracker {
    pub(crate) fn new(tol: f64) -> Self {
        Tracker {
            tol,
            checks: 0,
            worst: None,
            note: None,
        }
    }

    /// Records a raw signed margin.
    pub(crate) fn margin(&mut self, margin: f64, lhs: f64, rhs: f64, w: Witness) {
        self.checks += 1;
        // NaN margins count as the worst possible outcome.
        let m = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        if self.worst.as_ref().is_none_or(|(cur, ..)| m < *cur) {
            self.worst = Some((m, w, lhs, rhs));
        }
    }

    /// `lhs ≤ rhs`, normalized.
    pub(crate) fn leq(&mut self, lhs: f64, rhs: f64, w: Witness) {
        self.margin(normalized(lhs, rhs), lhs, rhs, w);
    }

    /// Ky Fan dominance `‖x‖_(k) ≤ ‖y‖_(k)` for every k.
    pub(crate) fn ky_fan(&mut self, x: &Spectrum, y: &Spectrum, link: usize, t: Option<f64>, p: Option<f64>) {
        let (sx, sy) = (x.partial_sums(), y.partial_sums());
        for (k, (a, b)) in sx.iter().zip(&sy).enumerate() {
            self.leq(*a, *b, Witness::new(link, t, p, NormId::KyFan(k + 1)));
        }
    }

    /// Ky Fan dominance along a chain `x₀ ≤ x₁ ≤ …`; links are numbered from `first_link`.
    pub(crate) fn ky_fan_chain(&mut self, chain: &[&Spectrum], first_link: usize, t: Option<f64>, p: Option<f64>) {
        for (i, pair) in chain.windows(2).enumerate() {
            self.ky_fan(pair[0], pair[1], first_link + i, t, p);
        }
    }

    /// Weak log-majorization on unnormalized log partial sums; with
    /// `with_det` also the equality of the full products.
    pub(crate) fn log_majorize(
        &mut self,
        x: &Spectrum,
        y: &Spectrum,
        with_det: bool,
        link: usize,
        t: Option<f64>,
        p: Option<f64>,
    ) {
        let (lx, ly) = match (x.partial_log_sums(), y.partial_log_sums()) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                self.fail(format!("log-majorization on a non-positive spectrum: {e}"));
                return;
            }
        };
        let n = lx.len();
        // The last prefix is the determinant; it is scored below when required.
        let prefixes = if with_det { n.saturating_sub(1) } else { n };
        for k in 0..prefixes {
            self.margin(
                ly[k] - lx[k],
                lx[k],
                ly[k],
                Witness::new(link, t, p, NormId::LogMaj(k + 1)),
            );
        }
        if with_det {
            self.margin(
                -(ly[n - 1] - lx[n - 1]).abs(),
                lx[n - 1],
                ly[n - 1],
                Witness::new(link, t, p, NormId::LogDet),
            );
        }
    }

    /// Weak majorization with margins normalized by `1 + max(|Σx|, |Σy|)`.
    pub(crate) fn weak_majorize(&mut self, x: &Spectrum, y: &Spectrum, link: usize, t: Option<f64>, p: Option<f64>) {
        let (sx, sy) = (x.partial_sums(), y.partial_sums());
        let scale = 1.0
            + sx.last()
                .map_or(0.0, |v| v.abs())
                .max(sy.last().map_or(0.0, |v| v.abs()));
        for (k, (a, b)) in sx.iter().zip(&sy).enumerate() {
            self.margin(
                (b - a) / scale,
                *a,
                *b,
                Witness::new(link, t, p, NormId::WeakMaj(k + 1)),
            );
        }
    }

    /// Marks the property as failed by an evaluation error.
    pub(crate) fn fail(&mut self, note: String) {
        self.checks += 1;
        self.worst = Some((
            f64::NEG_INFINITY,
            Witness::new(0, None, None, NormId::None),
            f64::NAN,
            f64::NAN,
        ));
        self.note.get_or_insert(note);
    }

    pub(crate) fn note(&mut self, note: String) {
        match &mut self.note {
            Some(n) => {
                n.push_str("; ");
                n.push_str(&note);
            }
            None => self.note = Some(note),
        }
    }

    pub(crate) fn finish(self, id: PropertyId, seed: u64, dim: usize) -> PropertyResult {
        let (status, marginal, worst_margin, witness, lhs, rhs) = match self.worst {
            None => (
                Status::Skipped,
                false,
                f64::INFINITY,
                Witness::new(0, None, None, NormId::None),
                f64::NAN,
                f64::NAN,
            ),
            Some((m, w, l, r)) => {
                let pass = m >= -self.tol;
                let marginal = pass && self.tol > 0.0 && m < -self.tol / 10.0;
                (if pass { Status::Pass } else { Status::Fail }, marginal, m, w, l, r)
            }
        };
        PropertyResult {
            property_id: id,
            seed,
            dim,
            status,
            marginal,
            worst_margin,
            witness,
            lhs,
            rhs,
            checks: self.checks,
            note: self.note,
        }
    }
}

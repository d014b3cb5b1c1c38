//! The inequality catalogue (P1–P15), the campaign runner and the
//! reproduction of the fixed 2×2 counterexample.
//!
//! Every sub-inequality `lhs ≤ rhs` is scored by the signed margin
//! `(rhs − lhs) / (1 + max(|lhs|, |rhs|))`; a property passes when its worst
//! margin is at least `−tolerance`. Majorization checks on products are scored
//! on log partial sums without normalization, which makes their tolerance a
//! relative one on the products themselves.

mod campaign;
mod counterexample;
mod instance;
mod properties;
mod tracker;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::Error;

pub use campaign::{run_campaign, CampaignConfig, CampaignReport, PropertyCounts};
pub use counterexample::{paper_counterexample, paper_pair, Counterexample, LOGEUC_BAND};
pub use instance::{Instance, InstanceSpec};
pub use properties::{check_property, check_property_with_tol};
pub use tracker::{NormId, Witness};

/// Default relative tolerance for the catalogue.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Tolerance of the compound-matrix identity (P8).
pub const COMPOUND_IDENTITY_TOL: f64 = 1e-7;

/// Default exponent grid.
pub const DEFAULT_P_GRID: [f64; 11] = [-4.0, -2.0, -1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0, 2.0, 4.0];

/// Default interpolation weights.
pub const DEFAULT_T_VALUES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Exponents of the multi-matrix reverse inequality in P9.
pub const BK_EXPONENTS: [f64; 4] = [1.0, 1.5, 2.0, 3.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8,
    P9,
    P10,
    P11,
    P12,
    P13,
    P14,
    P15,
}

impl PropertyId {
    pub const ALL: [PropertyId; 15] = [
        PropertyId::P1,
        PropertyId::P2,
        PropertyId::P3,
        PropertyId::P4,
        PropertyId::P5,
        PropertyId::P6,
        PropertyId::P7,
        PropertyId::P8,
        PropertyId::P9,
        PropertyId::P10,
        PropertyId::P11,
        PropertyId::P12,
        PropertyId::P13,
        PropertyId::P14,
        PropertyId::P15,
    ];

    pub fn description(self) -> &'static str {
        use PropertyId::*;
        match self {
            P1 => "eigenvalues of the weighted power mean are non-decreasing in p",
            P2 => "|||A#tB||| <= |||log-Euclidean||| <= |||power mean(p)|||, p > 0",
            P3 => "refined chain through the sandwich mean, p > 0",
            P4 => "six-term chain from A#tB to (1-t)A + tB at p = 1",
            P5 => "log-majorization chain with the two-form spectral equality",
            P6 => "fixed 2x2 pair: lambda_2(A#B) = 1 > lambda_2(log-Euclidean)",
            P7 => "A#B log-majorized by B^1/4 A^1/2 B^1/4; det and trace relations",
            P8 => "compound of A#B equals A#B of the compounds",
            P9 => "multi-matrix monotonicity, unnormalized decrease on (0,1], reverse power inequality",
            P10 => "multi-matrix log-Euclidean mean below every power mean, p > 0",
            P11 => "block PSD characterizations and |||A#B||| <= |||A^1/2 B^1/2|||",
            P12 => "4|||AB||| <= |||(A+B)^2||| and the p >= 1/2 extension",
            P13 => "A#tB log-majorized by A^(1-t)B^t and its norm corollaries",
            P14 => "|||A^1/2 X A^1/2||| <= |||(AX + XA)/2||| for symmetric X",
            P15 => "A#tB <= (1-t)A + tB in Loewner order; Golden-Thompson",
        }
    }

    pub fn tolerance(self, base: f64) -> f64 {
        match self {
            PropertyId::P6 => 0.0,
            PropertyId::P8 => COMPOUND_IDENTITY_TOL.max(base),
            _ => base,
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for PropertyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        PropertyId::ALL
            .iter()
            .copied()
            .find(|id| id.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

impl Serialize for PropertyId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Verdict of one property on one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyResult {
    pub property_id: PropertyId,
    pub seed: u64,
    pub dim: usize,
    pub status: Status,
    /// A pass that used more than a tenth of the tolerance.
    pub marginal: bool,
    /// Signed slack of the tightest sub-inequality; positive means satisfied.
    pub worst_margin: f64,
    #[serde(flatten)]
    pub witness: Witness,
    pub lhs: f64,
    pub rhs: f64,
    /// Number of sub-inequalities evaluated.
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

use rand::Rng;
use serde::Serialize;

use super::{DEFAULT_P_GRID, DEFAULT_T_VALUES};
use crate::densela::{random_pd_with, random_symmetric, seeded_rng, PdMatrix, SymMatrix};
use crate::error::{Error, Result};
use crate::means::WeightVector;

/// Parameters of one random instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceSpec {
    pub seed: u64,
    pub dim: usize,
    pub cond_exponent: f64,
    pub t_values: Vec<f64>,
    pub p_grid: Vec<f64>,
    /// Matrix count for the multi-matrix properties.
    pub m: usize,
}

impl InstanceSpec {
    pub fn new(seed: u64, dim: usize, cond_exponent: f64) -> Self {
        InstanceSpec {
            seed,
            dim,
            cond_exponent,
            t_values: DEFAULT_T_VALUES.to_vec(),
            p_grid: DEFAULT_P_GRID.to_vec(),
            m: 3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidParameter(format!(
                "dim must be at least 2, got {}",
                self.dim
            )));
        }
        if !(self.cond_exponent.is_finite() && self.cond_exponent >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cond_exponent must be finite and nonnegative, got {}",
                self.cond_exponent
            )));
        }
        if let Some(t) = self.t_values.iter().find(|t| !(0.0..=1.0).contains(*t)) {
            return Err(Error::InvalidParameter(format!("t = {t} outside [0, 1]")));
        }
        if self.p_grid.iter().any(|p| !p.is_finite()) || self.p_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "p_grid must be finite and strictly ascending".into(),
            ));
        }
        if self.m < 2 {
            return Err(Error::InvalidParameter(format!("m must be at least 2, got {}", self.m)));
        }
        Ok(())
    }
}

/// The matrices of one instance, all derived from `spec.seed`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub a: PdMatrix,
    pub b: PdMatrix,
    /// `m` matrices for the multi-matrix properties; the first two are `a` and `b`.
    pub family: Vec<PdMatrix>,
    pub weights: WeightVector,
    /// Symmetric test matrix for the arithmetic-geometric mean norm inequality.
    pub x: SymMatrix,
}

impl Instance {
    pub fn generate(spec: InstanceSpec) -> Result<Self> {
        spec.validate()?;
        let mut rng = seeded_rng(spec.seed);
        let (n, c) = (spec.dim, spec.cond_exponent);
        let a = random_pd_with(n, c, &mut rng)?;
        let b = random_pd_with(n, c, &mut rng)?;
        let mut family = vec![a.clone(), b.clone()];
        for _ in 2..spec.m {
            family.push(random_pd_with(n, c, &mut rng)?);
        }
        // Weights bounded away from zero so no matrix drops out of the family.
        let raw: Vec<f64> = (0..spec.m).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let weights = WeightVector::new(raw.iter().map(|w| w / total).collect())?;
        let x = random_symmetric(n, &mut rng);
        Ok(Instance {
            spec,
            a,
            b,
            family,
            weights,
            x,
        })
    }

    /// Instance with explicit matrices; the family is `[a, b]` with equal weights.
    pub fn from_pair(spec: InstanceSpec, a: PdMatrix, b: PdMatrix) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        let spec = InstanceSpec {
            dim: a.dim(),
            m: 2,
            ..spec
        };
        spec.validate()?;
        let x = SymMatrix::from_symmetrized(&a.as_gen().sub(b.as_gen())?);
        Ok(Instance {
            family: vec![a.clone(), b.clone()],
            weights: WeightVector::uniform(2)?,
            spec,
            a,
            b,
            x,
        })
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn family_refs(&self) -> Vec<&PdMatrix> {
        self.family.iter().collect()
    }
}

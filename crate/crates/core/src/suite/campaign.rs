use std::io::Write;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::instance::{Instance, InstanceSpec};
use super::properties::check_property_with_tol;
use super::tracker::{NormId, Witness};
use super::{PropertyId, PropertyResult, Status, DEFAULT_P_GRID, DEFAULT_TOL, DEFAULT_T_VALUES};
use crate::densela::seeded_rng;
use crate::error::{Error, Result};

/// Ranges from which the instances of a campaign are drawn.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignConfig {
    pub master_seed: u64,
    pub count: usize,
    /// Inclusive dimension range.
    pub dims: (usize, usize),
    /// Condition exponents are drawn uniformly from `[0, cond_max]`.
    pub cond_max: f64,
    pub t_values: Vec<f64>,
    pub p_grid: Vec<f64>,
    pub m_values: Vec<usize>,
    pub properties: Vec<PropertyId>,
    pub tolerance: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            master_seed: 0,
            count: 100,
            dims: (2, 6),
            cond_max: 3.0,
            t_values: DEFAULT_T_VALUES.to_vec(),
            p_grid: DEFAULT_P_GRID.to_vec(),
            m_values: vec![2, 3, 4],
            properties: PropertyId::ALL.to_vec(),
            tolerance: DEFAULT_TOL,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.dims;
        if lo < 2 || lo > hi {
            return Err(Error::InvalidParameter(format!("bad dimension range {lo}:{hi}")));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!("bad tolerance {}", self.tolerance)));
        }
        if self.m_values.is_empty() {
            return Err(Error::InvalidParameter("m_values is empty".into()));
        }
        for &m in &self.m_values {
            self.template(lo, self.cond_max, m).validate()?;
        }
        Ok(())
    }

    fn template(&self, dim: usize, cond_exponent: f64, m: usize) -> InstanceSpec {
        InstanceSpec {
            t_values: self.t_values.clone(),
            p_grid: self.p_grid.clone(),
            m,
            ..InstanceSpec::new(0, dim, cond_exponent)
        }
    }

    /// Spec of instance `i`: seed `master_seed + i`; dimension, condition
    /// exponent and matrix count are drawn from a side stream of that seed.
    pub fn instance_spec(&self, i: usize) -> InstanceSpec {
        let seed = self.master_seed.wrapping_add(i as u64);
        let mut rng = seeded_rng(seed);
        rng.set_stream(1);
        let dim = rng.random_range(self.dims.0..=self.dims.1);
        let cond = self.cond_max * rng.random::<f64>();
        let m = self.m_values[rng.random_range(0..self.m_values.len())];
        InstanceSpec {
            seed,
            ..self.template(dim, cond, m)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyCounts {
    pub property_id: PropertyId,
    pub pass: usize,
    pub fail: usize,
    pub marginal: usize,
    pub skipped: usize,
}

impl PropertyCounts {
    pub fn new(property_id: PropertyId) -> Self {
        PropertyCounts {
            property_id,
            pass: 0,
            fail: 0,
            marginal: 0,
            skipped: 0,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skipped
    }
}

#[derive(Clone, Debug)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    /// Instance-major, then in the order of `config.properties`.
    pub results: Vec<PropertyResult>,
    pub counts: Vec<PropertyCounts>,
    pub duration: Duration,
}

#[derive(Serialize)]
struct Summary<'a> {
    summary: bool,
    instances: usize,
    failures: usize,
    marginal: usize,
    config: &'a CampaignConfig,
    counts: &'a [PropertyCounts],
}

impl CampaignReport {
    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn failure_count(&self) -> usize {
        self.failures().count()
    }

    pub fn counts_for(&self, id: PropertyId) -> Option<&PropertyCounts> {
        self.counts.iter().find(|c| c.property_id == id)
    }

    /// One JSON object per (property, instance), then a summary object. The
    /// wall-clock duration is left out so that reruns are byte-identical.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for r in &self.results {
            serde_json::to_writer(&mut w, r).map_err(io_err)?;
            w.write_all(b"\n")?;
        }
        let summary = Summary {
            summary: true,
            instances: self.config.count,
            failures: self.failure_count(),
            marginal: self.counts.iter().map(|c| c.marginal).sum(),
            config: &self.config,
            counts: &self.counts,
        };
        serde_json::to_writer(&mut w, &summary).map_err(io_err)?;
        w.write_all(b"\n")?;
        Ok(())
    }

    /// One row per property: `property_id,pass,fail,marginal,skipped`.
    pub fn write_csv_summary<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["property_id", "pass", "fail", "marginal", "skipped"])
            .map_err(csv_err)?;
        for c in &self.counts {
            out.write_record([
                c.property_id.to_string(),
                c.pass.to_string(),
                c.fail.to_string(),
                c.marginal.to_string(),
                c.skipped.to_string(),
            ])
            .map_err(csv_err)?;
        }
        out.flush()?;
        Ok(())
    }
}

fn io_err(e: serde_json::Error) -> Error {
    Error::Io(e.to_string())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn evaluate(config: &CampaignConfig, i: usize) -> Vec<PropertyResult> {
    let spec = config.instance_spec(i);
    let (seed, dim) = (spec.seed, spec.dim);
    match Instance::generate(spec) {
        Ok(inst) => config
            .properties
            .iter()
            .map(|&id| check_property_with_tol(id, &inst, config.tolerance))
            .collect(),
        Err(e) => config
            .properties
            .iter()
            .map(|&id| PropertyResult {
                property_id: id,
                seed,
                dim,
                status: Status::Fail,
                marginal: false,
                worst_margin: f64::NEG_INFINITY,
                witness: Witness::new(0, None, None, NormId::None),
                lhs: f64::NAN,
                rhs: f64::NAN,
                checks: 0,
                note: Some(format!("instance generation failed: {e}")),
            })
            .collect(),
    }
}

/// Evaluates every selected property on `config.count` instances. Instances
/// run in parallel and are merged in instance order, so the result does not
/// depend on the number of workers. A failing instance never stops the run.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let start = Instant::now();
    let per_instance: Vec<Vec<PropertyResult>> =
        (0..config.count).into_par_iter().map(|i| evaluate(config, i)).collect();
    let results: Vec<PropertyResult> = per_instance.into_iter().flatten().collect();

    let mut counts: Vec<PropertyCounts> = config.properties.iter().map(|&id| PropertyCounts::new(id)).collect();
    for r in &results {
        let c = counts
            .iter_mut()
            .find(|c| c.property_id == r.property_id)
            .expect("selected property");
        match r.status {
            Status::Pass => c.pass += 1,
            Status::Fail => c.fail += 1,
            Status::Skipped => c.skipped += 1,
        }
        c.marginal += usize::from(r.marginal);
    }
    Ok(CampaignReport {
        config: config.clone(),
        results,
        counts,
        duration: start.elapsed(),
    })
}

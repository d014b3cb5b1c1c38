//! Fixtures shared by the benches.

use pdmeans_core::densela::{random_pd_with, random_symmetric, seeded_rng};
use pdmeans_core::suite::{CampaignConfig, PropertyId};
use pdmeans_core::{PdMatrix, SymMatrix};

pub const DIMS: [usize; 3] = [2, 4, 6];

pub fn symmetric(n: usize) -> SymMatrix {
    random_symmetric(n, &mut seeded_rng(n as u64))
}

/// A pair with eigenvalues in `[10^-cond, 10^cond]`.
pub fn pd_pair(n: usize, cond: f64) -> (PdMatrix, PdMatrix) {
    let mut rng = seeded_rng(1000 + n as u64);
    let a = random_pd_with(n, cond, &mut rng).expect("fixture");
    let b = random_pd_with(n, cond, &mut rng).expect("fixture");
    (a, b)
}

pub fn small_campaign(properties: Vec<PropertyId>) -> CampaignConfig {
    CampaignConfig {
        master_seed: 7,
        count: 10,
        properties,
        ..Default::default()
    }
}

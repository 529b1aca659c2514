//! Simulation: the idealized walk behind the crossing events, the face census
//! of uniform webs, and z-score comparison against exact predictions.

mod census;
mod compare;

pub use census::{census, census_exhaustive, census_paths, CensusConfig, CensusResult, ColorCounts, SizeDepthCell, TypeCell};
pub use compare::{compare, compare_with, CompareCell, CompareReport, Prediction};

use crate::dirichlet::{QdDomain, Site};
use crate::exactmath::LatticePointEZ;
use crate::rng::stream_rng;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Steps allowed per trial before it is counted as censored.
pub const MAX_WALK_STEPS: u64 = 100_000_000;

/// Trials per RNG stream.
const CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MonteCarloError {
    #[error("{0} lies outside Q_{1}")]
    Outside(LatticePointEZ, u32),
    #[error("invalid census configuration: {0}")]
    Config(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkOracle {
    pub start: LatticePointEZ,
    pub d: u32,
    pub trials: u64,
    pub seed: u64,
    /// Trials still running after `MAX_WALK_STEPS` steps.
    pub censored: u64,
    pub counts: BTreeMap<LatticePointEZ, u64>,
}

impl WalkOracle {
    pub fn frequency(&self, a: LatticePointEZ) -> f64 {
        self.counts.get(&a).copied().unwrap_or(0) as f64 / self.trials as f64
    }

    /// Binomial standard error of `frequency(a)`.
    pub fn std_error(&self, a: LatticePointEZ) -> f64 {
        let p = self.frequency(a);
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    pub fn z_score(&self, a: LatticePointEZ, expected: f64) -> f64 {
        let se = (expected * (1.0 - expected) / self.trials as f64).sqrt();
        (self.frequency(a) - expected) / se
    }
}

/// Runs `trials` i.i.d. walks from `start` until they leave the interior of
/// `Q_d`, tallying the absorbing boundary point.
pub fn walk_oracle(start: LatticePointEZ, d: u32, trials: u64, seed: u64) -> Result<WalkOracle, MonteCarloError> {
    walk_oracle_capped(start, d, trials, seed, MAX_WALK_STEPS)
}

pub fn walk_oracle_capped(start: LatticePointEZ, d: u32, trials: u64, seed: u64, max_steps: u64) -> Result<WalkOracle, MonteCarloError> {
    // no cap: the level bound is never reached
    let dom = QdDomain { d, cap: u32::MAX };
    let site = |p: LatticePointEZ| dom.site(p);
    if site(start) == Site::Outside {
        return Err(MonteCarloError::Outside(start, d));
    }
    let chunks = trials.div_ceil(CHUNK);
    let (counts, censored) = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = stream_rng(seed, c);
            let n = CHUNK.min(trials - c * CHUNK);
            let mut counts: BTreeMap<LatticePointEZ, u64> = BTreeMap::new();
            let mut censored = 0u64;
            for _ in 0..n {
                let mut z = start;
                let mut steps = 0u64;
                while site(z) == Site::Interior {
                    if steps == max_steps {
                        break;
                    }
                    z = z + LatticePointEZ::STEPS[rng.gen_range(0..3)];
                    steps += 1;
                }
                if site(z) == Site::Interior {
                    censored += 1;
                } else {
                    *counts.entry(z).or_insert(0) += 1;
                }
            }
            (counts, censored)
        })
        .reduce(
            || (BTreeMap::new(), 0),
            |(mut a, ca), (b, cb)| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                (a, ca + cb)
            },
        );
    Ok(WalkOracle { start, d, trials, seed, censored, counts })
}

#[cfg(test)]
mod tests;

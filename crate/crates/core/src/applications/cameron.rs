//! Monte Carlo for Cameron's random sum-free set.
//!
//! Scan `z = 1, 2, …, N`. If `z` is not a sum of two (not necessarily
//! distinct) elements joined earlier, it joins with probability ½. Optionally
//! condition on `R ⊆ M_S`, the positive integers whose residue mod `n` lies
//! in `S`.
//!
//! Trial `i` draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `i`, one
//! `u32` per step whether or not `z` is free, so step `z` of trial `i` always
//! sees the same word. Aggregation uses integer sums only, so the report is
//! independent of how rayon schedules the trials.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits;
use crate::error::{Error, Result};
use crate::zn::CyclicSet;

const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessConfig {
    pub horizon: usize,
    pub trials: u64,
    pub seed: u64,
    pub condition: Option<CyclicSet>,
}

impl ProcessConfig {
    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 {
            return Err(Error::InvalidConfig("horizon must be at least 1".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub horizon: usize,
    pub trials: u64,
    pub seed: u64,
    pub condition: Option<CyclicSet>,
    /// Trials whose `R ∩ [1, N]` stayed inside `M_S` (all of them when
    /// unconditioned).
    pub contained: u64,
    pub containment_frequency: f64,
    /// Wilson score interval, 95%.
    pub containment_ci95: [f64; 2],
    /// Mean of `|R ∩ [1, N]| / N` over contained trials.
    pub conditional_mean_density: Option<f64>,
    /// Normal-approximation 95% interval for that mean.
    pub density_ci95: Option<[f64; 2]>,
}

/// `Some(|R|)` if the trial stayed inside the condition, `None` otherwise.
fn run_trial(config: &ProcessConfig, trial: u64) -> Option<u64> {
    let n = config.horizon;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial);
    // bit z of `joined` for z in [0, N]; `blocked` holds R + R up to N
    let words = bits::words_for(n + 1);
    let mut joined = vec![0u64; words];
    let mut blocked = vec![0u64; words];
    let mut size = 0;
    for z in 1..=n {
        let coin = rng.next_u32() >> 31 == 1;
        if bits::get(&blocked, z) || !coin {
            continue;
        }
        if let Some(s) = &config.condition {
            if !s.contains(z % s.modulus()) {
                return None;
            }
        }
        bits::set(&mut joined, z);
        size += 1;
        bits::or_shl(&mut blocked, &joined, z, n + 1);
    }
    Some(size)
}

fn wilson(successes: u64, trials: u64) -> [f64; 2] {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    [(centre - half).max(0.0), (centre + half).min(1.0)]
}

pub fn simulate_random_sumfree(config: &ProcessConfig) -> Result<SimulationReport> {
    config.validate()?;
    let (contained, sum, sum_sq) = (0..config.trials)
        .into_par_iter()
        .map(|i| match run_trial(config, i) {
            Some(size) => (1u64, size as u128, (size as u128) * (size as u128)),
            None => (0, 0, 0),
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));

    let horizon = config.horizon as f64;
    let (mean, ci) = if contained == 0 {
        (None, None)
    } else {
        let c = contained as f64;
        let mean = sum as f64 / c / horizon;
        let var = if contained > 1 {
            ((sum_sq as f64 - (sum as f64).powi(2) / c) / (c - 1.0)).max(0.0) / (horizon * horizon)
        } else {
            0.0
        };
        let half = Z95 * (var / c).sqrt();
        (Some(mean), Some([mean - half, mean + half]))
    };

    Ok(SimulationReport {
        horizon: config.horizon,
        trials: config.trials,
        seed: config.seed,
        condition: config.condition.clone(),
        contained,
        containment_frequency: contained as f64 / config.trials as f64,
        containment_ci95: wilson(contained, config.trials),
        conditional_mean_density: mean,
        density_ci95: ci,
    })
}

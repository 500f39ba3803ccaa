use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motif::ScoreProfile;

/// Parameters of the top-k trimmed mean fitness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitnessConfig {
    /// `k = ceil(top_fraction · n_scorable)`.
    pub top_fraction: f64,
    /// Within the top `k`, the largest `ceil(trim_fraction · k)` are dropped.
    pub trim_fraction: f64,
}

impl Default for FitnessConfig {
    fn default() -> Self {
        FitnessConfig {
            top_fraction: 0.2,
            trim_fraction: 0.1,
        }
    }
}

impl FitnessConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.top_fraction > 0.0 && self.top_fraction <= 1.0) {
            return Err(Error::invalid("top_fraction", "must be in (0, 1]"));
        }
        if !(self.trim_fraction >= 0.0 && self.trim_fraction < 1.0) {
            return Err(Error::invalid("trim_fraction", "must be in [0, 1)"));
        }
        Ok(())
    }
}

/// `ceil(fraction · n)`, tolerant of products like `0.1 · 40 = 4.000…1`.
pub(crate) fn ceil_count(fraction: f64, n: usize) -> usize {
    let x = fraction * n as f64;
    ((x - 1e-9).ceil().max(0.0) as usize).min(n)
}

/// Mean of the top-k best-hit scores after dropping the largest few.
pub fn fitness(profile: &ScoreProfile, cfg: &FitnessConfig) -> Result<f64> {
    if profile.is_empty() {
        return Err(Error::NoScorableSequences);
    }
    let n = profile.len();
    let k = ceil_count(cfg.top_fraction, n).max(1);
    let mut sorted = profile.best_hits.clone();
    sorted.sort_unstable_by(|a, b| b.total_cmp(a));
    let top = &sorted[..k];
    let drop = ceil_count(cfg.trim_fraction, k);
    let kept = if drop < k { &top[drop..] } else { top };
    Ok(running_mean(kept))
}

/// Incremental mean; exact for constant input.
fn running_mean(values: &[f64]) -> f64 {
    values
        .iter()
        .enumerate()
        .fold(0.0, |m, (i, &x)| m + (x - m) / (i + 1) as f64)
}

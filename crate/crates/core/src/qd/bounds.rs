use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motif::{describe, quantile, random_pwm_with, Characterization, EvalContext};
use crate::qd::DescriptorBounds;

/// Width given to a bound whose sampled range collapses.
pub const DEGENERATE_WIDTH: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsConfig {
    pub n_samples: usize,
    pub q_lo: f64,
    pub q_hi: f64,
    pub padding: f64,
    /// Dirichlet concentration of the sampled motifs.
    pub alpha: f64,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            n_samples: 400,
            q_lo: 0.01,
            q_hi: 0.99,
            padding: 0.1,
            alpha: 1.0,
        }
    }
}

impl BoundsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_samples < 10 {
            return Err(Error::invalid("n_samples", "need at least 10 samples"));
        }
        self.validate_quantiles()?;
        if !(self.padding >= 0.0 && self.padding.is_finite()) {
            return Err(Error::invalid("padding", "must be non-negative"));
        }
        Ok(())
    }
}

/// Quantile range per dimension, padded on both sides by a fraction of its width.
pub fn bounds_from_samples(samples: &[[f64; 2]], cfg: &BoundsConfig) -> Result<DescriptorBounds> {
    cfg.validate_quantiles()?;
    if samples.is_empty() {
        return Err(Error::invalid("samples", "no descriptor samples"));
    }
    let mut lo = [0.0; 2];
    let mut hi = [0.0; 2];
    for d in 0..2 {
        let column: Vec<f64> = samples.iter().map(|s| s[d]).collect();
        if column.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteDescriptor(samples[0]));
        }
        let a = quantile(&column, cfg.q_lo).expect("non-empty");
        let b = quantile(&column, cfg.q_hi).expect("non-empty");
        let pad = cfg.padding * (b - a);
        let (mut l, mut h) = (a - pad, b + pad);
        if h - l < 1e-9 {
            let mid = 0.5 * (l + h);
            l = mid - 0.5 * DEGENERATE_WIDTH;
            h = mid + 0.5 * DEGENERATE_WIDTH;
        }
        lo[d] = l;
        hi[d] = h;
    }
    DescriptorBounds::new(lo, hi)
}

impl BoundsConfig {
    fn validate_quantiles(&self) -> Result<()> {
        if !(0.0 <= self.q_lo && self.q_lo < self.q_hi && self.q_hi <= 1.0) {
            return Err(Error::invalid("quantiles", "need 0 <= q_lo < q_hi <= 1"));
        }
        Ok(())
    }
}

/// Descriptor bounds from random Dirichlet motifs evaluated in `ctx`.
pub fn estimate_bounds(
    characterization: Characterization,
    ctx: &EvalContext,
    motif_len: usize,
    cfg: &BoundsConfig,
    seed: u64,
) -> Result<DescriptorBounds> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let motifs = (0..cfg.n_samples)
        .map(|_| random_pwm_with(motif_len, cfg.alpha, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    let samples = motifs
        .par_iter()
        .map(|p| describe(p, characterization, ctx).map(|d| d.values))
        .collect::<Result<Vec<_>>>()?;
    bounds_from_samples(&samples, cfg)
}

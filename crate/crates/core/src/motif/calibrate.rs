use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motif::{Pwm, Scanner};
use crate::seq::{BackgroundDistribution, SequenceSet};

/// Backgrounds smaller than this give an unstable upper percentile.
pub const MIN_STABLE_BACKGROUND: usize = 20;

/// Support threshold on length-normalized best-hit scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportRule {
    pub threshold: f64,
    pub percentile: f64,
}

/// Linear-interpolation quantile (`q` in `[0, 1]`) of unsorted values.
pub fn quantile(values: &[f64], q: f64) -> Option<f64> {
    if values.is_empty() || !(0.0..=1.0).contains(&q) {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    Some(quantile_sorted(&sorted, q))
}

pub(crate) fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    if lo == hi {
        sorted[lo]
    } else {
        sorted[lo] + frac * (sorted[hi] - sorted[lo])
    }
}

/// Percentile in `[0, 100]`.
pub fn percentile(values: &[f64], pct: f64) -> Option<f64> {
    quantile(values, pct / 100.0)
}

/// Threshold at `percentile` of this motif's background best-hit scores.
pub fn calibrate_support_threshold(
    pwm: &Pwm,
    background: &SequenceSet,
    bg: &BackgroundDistribution,
    percentile_value: f64,
) -> Result<SupportRule> {
    if !(percentile_value > 0.0 && percentile_value < 100.0) {
        return Err(Error::invalid("support_percentile", "must be in (0, 100)"));
    }
    let profile = Scanner::new(pwm, bg).profile(background);
    threshold_from_scores(&profile.best_hits, percentile_value)
}

pub(crate) fn threshold_from_scores(scores: &[f64], percentile_value: f64) -> Result<SupportRule> {
    if scores.is_empty() {
        return Err(Error::NoScorableSequences);
    }
    if scores.len() < MIN_STABLE_BACKGROUND {
        warn!(
            "support threshold from only {} background sequences; percentile is unstable",
            scores.len()
        );
    }
    Ok(SupportRule {
        threshold: percentile(scores, percentile_value).expect("non-empty"),
        percentile: percentile_value,
    })
}

//! Behavioral descriptor measures for PWMs. Entropy-style measures are in
//! bits.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motif::calibrate::quantile_sorted;
use crate::motif::{Pwm, Scanner, ScoreProfile, SupportRule};
use crate::seq::{BackgroundDistribution, SequenceSet, C, G};

/// Which pair of descriptors spans the archive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Characterization {
    /// (information content, support)
    #[serde(rename = "ME.SP")]
    Sp,
    /// (GC content, entropy)
    #[serde(rename = "ME.CO")]
    Co,
    /// (support, tail behavior)
    #[serde(rename = "ME.RB")]
    Rb,
}

impl Characterization {
    pub const ALL: [Characterization; 3] = [Characterization::Sp, Characterization::Co, Characterization::Rb];

    pub fn name(self) -> &'static str {
        match self {
            Characterization::Sp => "ME.SP",
            Characterization::Co => "ME.CO",
            Characterization::Rb => "ME.RB",
        }
    }

    pub fn axis_names(self) -> [&'static str; 2] {
        match self {
            Characterization::Sp => ["information_content", "support"],
            Characterization::Co => ["gc_content", "entropy"],
            Characterization::Rb => ["support", "tail_behavior"],
        }
    }

    /// Whether the descriptor needs a background-calibrated support threshold.
    pub fn uses_support(self) -> bool {
        !matches!(self, Characterization::Co)
    }
}

impl fmt::Display for Characterization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Characterization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        match key.strip_prefix("me.").unwrap_or(&key) {
            "sp" => Ok(Characterization::Sp),
            "co" => Ok(Characterization::Co),
            "rb" => Ok(Characterization::Rb),
            _ => Err(Error::invalid("characterization", format!("unknown `{s}` (expected sp, co or rb)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BehaviorDescriptor {
    pub characterization: Characterization,
    pub values: [f64; 2],
}

/// Mean per-position relative entropy against the background.
pub fn information_content(pwm: &Pwm, bg: &BackgroundDistribution) -> f64 {
    let bgp = bg.probs();
    let total: f64 = pwm
        .rows()
        .iter()
        .map(|r| (0..4).map(|b| r[b] * (r[b] / bgp[b]).log2()).sum::<f64>())
        .sum();
    total / pwm.len() as f64
}

/// Mean per-position Shannon entropy.
pub fn entropy(pwm: &Pwm) -> f64 {
    let total: f64 = pwm
        .rows()
        .iter()
        .map(|r| -r.iter().map(|&p| p * p.log2()).sum::<f64>())
        .sum();
    total / pwm.len() as f64
}

pub fn gc_content(pwm: &Pwm) -> f64 {
    pwm.rows().iter().map(|r| r[C as usize] + r[G as usize]).sum::<f64>() / pwm.len() as f64
}

pub fn at_content(pwm: &Pwm) -> f64 {
    pwm.rows().iter().map(|r| r[0] + r[3]).sum::<f64>() / pwm.len() as f64
}

/// Fraction of scorable profile entries strictly above `threshold`.
pub fn support_from_profile(profile: &ScoreProfile, threshold: f64) -> Result<f64> {
    if profile.is_empty() {
        return Err(Error::NoScorableSequences);
    }
    let above = profile.best_hits.iter().filter(|&&h| h > threshold).count();
    Ok(above as f64 / profile.len() as f64)
}

pub fn support(pwm: &Pwm, foreground: &SequenceSet, bg: &BackgroundDistribution, rule: &SupportRule) -> Result<f64> {
    support_from_profile(&Scanner::new(pwm, bg).profile(foreground), rule.threshold)
}

/// Upper-tail spread of best-hit scores, as `upper − center` percentiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailQuantiles {
    pub upper: f64,
    pub center: f64,
}

impl Default for TailQuantiles {
    fn default() -> Self {
        TailQuantiles {
            upper: 95.0,
            center: 50.0,
        }
    }
}

pub fn tail_behavior(profile: &ScoreProfile) -> Result<f64> {
    tail_behavior_with(profile, TailQuantiles::default())
}

pub fn tail_behavior_with(profile: &ScoreProfile, q: TailQuantiles) -> Result<f64> {
    if profile.len() < 2 {
        return Err(Error::InsufficientScores {
            needed: 2,
            have: profile.len(),
        });
    }
    let mut sorted = profile.best_hits.clone();
    sorted.sort_unstable_by(f64::total_cmp);
    Ok(quantile_sorted(&sorted, q.upper / 100.0) - quantile_sorted(&sorted, q.center / 100.0))
}

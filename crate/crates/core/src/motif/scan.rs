//! Log-odds scanning of sequences with a PWM on both strands.
//!
//! Window sums pair position `j` with position `L-1-j` before accumulating,
//! so reversing a window's terms yields the bit-identical score. That makes
//! forward/reverse strand symmetry exact rather than approximate.

use crate::error::{Error, Result};
use crate::motif::Pwm;
use crate::seq::{BackgroundDistribution, Sequence, SequenceSet, N};

/// Best-hit scores of every scorable sequence in a set, in set order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreProfile {
    pub best_hits: Vec<f64>,
    /// Sequences with no `N`-free window of the motif length.
    pub skipped: usize,
}

impl ScoreProfile {
    pub fn len(&self) -> usize {
        self.best_hits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.best_hits.is_empty()
    }

    pub fn total(&self) -> usize {
        self.best_hits.len() + self.skipped
    }
}

/// Precomputed natural-log odds for both strands of one motif.
#[derive(Debug, Clone)]
pub struct Scanner {
    forward: Vec<[f64; 4]>,
    reverse: Vec<[f64; 4]>,
}

impl Scanner {
    pub fn new(pwm: &Pwm, bg: &BackgroundDistribution) -> Self {
        let bgp = bg.probs();
        let forward: Vec<[f64; 4]> = pwm
            .rows()
            .iter()
            .map(|row| [0, 1, 2, 3].map(|b| (row[b] / bgp[b]).ln()))
            .collect();
        // Minus-strand window read on the plus strand: position j sees the
        // complement of the base at L-1-j.
        let reverse = forward.iter().rev().map(|r| [r[3], r[2], r[1], r[0]]).collect();
        Scanner { forward, reverse }
    }

    pub fn motif_len(&self) -> usize {
        self.forward.len()
    }

    /// Length-normalized maximum over all `N`-free windows on both strands.
    pub fn best_hit(&self, seq: &[u8]) -> Option<f64> {
        let l = self.forward.len();
        if seq.len() < l {
            return None;
        }
        let mut best = f64::NEG_INFINITY;
        let mut found = false;
        // first start position not preceded by an N inside the window
        let mut next_valid = 0usize;
        for (i, &b) in seq.iter().enumerate() {
            if b >= N {
                next_valid = i + 1;
            }
            if i + 1 < l {
                continue;
            }
            let start = i + 1 - l;
            if start < next_valid {
                continue;
            }
            let w = &seq[start..=i];
            let f = window_sum(&self.forward, w);
            let r = window_sum(&self.reverse, w);
            best = best.max(f).max(r);
            found = true;
        }
        found.then(|| best / l as f64)
    }

    pub fn profile(&self, set: &SequenceSet) -> ScoreProfile {
        let mut best_hits = Vec::with_capacity(set.len());
        let mut skipped = 0;
        for s in set {
            match self.best_hit(s.bases()) {
                Some(h) => best_hits.push(h),
                None => skipped += 1,
            }
        }
        ScoreProfile { best_hits, skipped }
    }
}

#[inline]
fn window_sum(table: &[[f64; 4]], w: &[u8]) -> f64 {
    let l = w.len();
    let mut s = 0.0;
    for j in 0..l / 2 {
        let k = l - 1 - j;
        s += table[j][w[j] as usize] + table[k][w[k] as usize];
    }
    if l % 2 == 1 {
        let m = l / 2;
        s += table[m][w[m] as usize];
    }
    s
}

/// Log-odds of one window against the motif (natural log, not normalized).
pub fn log_odds(pwm: &Pwm, window: &[u8], bg: &BackgroundDistribution) -> Result<f64> {
    if window.len() != pwm.len() {
        return Err(Error::WindowLengthMismatch {
            expected: pwm.len(),
            got: window.len(),
        });
    }
    if window.iter().any(|&b| b >= N) {
        return Err(Error::invalid("window", "contains an ambiguous base"));
    }
    Ok(window_sum(&Scanner::new(pwm, bg).forward, window))
}

pub fn best_hit(pwm: &Pwm, seq: &Sequence, bg: &BackgroundDistribution) -> Option<f64> {
    Scanner::new(pwm, bg).best_hit(seq.bases())
}

pub fn score_profile(pwm: &Pwm, set: &SequenceSet, bg: &BackgroundDistribution) -> Result<ScoreProfile> {
    let profile = Scanner::new(pwm, bg).profile(set);
    if profile.is_empty() {
        return Err(Error::NoScorableSequences);
    }
    Ok(profile)
}

//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the scanner or archive under test.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn letter_index(c: char) -> Option<usize> {
    match c.to_ascii_uppercase() {
        'A' => Some(0),
        'C' => Some(1),
        'G' => Some(2),
        'T' => Some(3),
        _ => None,
    }
}

fn complement_letter(c: char) -> char {
    match c.to_ascii_uppercase() {
        'A' => 'T',
        'C' => 'G',
        'G' => 'C',
        'T' => 'A',
        other => other,
    }
}

/// Log-odds of a window of letters, straight from the probability table.
fn window_score(rows: &[[f64; 4]], window: &[char], bg: &[f64; 4]) -> Option<f64> {
    let mut total = 0.0;
    for (j, &c) in window.iter().enumerate() {
        let b = letter_index(c)?;
        total += (rows[j][b] / bg[b]).ln();
    }
    Some(total)
}

/// Naive two-strand best hit: every start, both strands, windows with an
/// ambiguous letter skipped, maximum divided by motif length.
pub fn naive_best_hit(rows: &[[f64; 4]], seq: &str, bg: &[f64; 4]) -> Option<f64> {
    let letters: Vec<char> = seq.chars().collect();
    let l = rows.len();
    if letters.len() < l {
        return None;
    }
    let mut best: Option<f64> = None;
    for start in 0..=letters.len() - l {
        let plus: Vec<char> = letters[start..start + l].to_vec();
        let minus: Vec<char> = plus.iter().rev().map(|&c| complement_letter(c)).collect();
        for w in [&plus, &minus] {
            if let Some(s) = window_score(rows, w, bg) {
                best = Some(best.map_or(s, |b: f64| b.max(s)));
            }
        }
    }
    best.map(|b| b / l as f64)
}

pub fn random_rows<R: Rng>(rng: &mut R, len: usize) -> Vec<[f64; 4]> {
    (0..len)
        .map(|_| {
            let raw: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.05..1.0));
            let s: f64 = raw.iter().sum();
            raw.map(|x| x / s)
        })
        .collect()
}

pub fn random_letters<R: Rng>(rng: &mut R, len: usize, n_rate: f64) -> String {
    (0..len)
        .map(|_| {
            if rng.random_bool(n_rate) {
                'N'
            } else {
                ['A', 'C', 'G', 'T'][rng.random_range(0..4)]
            }
        })
        .collect()
}

pub fn entropy_bits(rows: &[[f64; 4]]) -> f64 {
    let mut h = 0.0;
    for r in rows {
        for &p in r {
            if p > 0.0 {
                h -= p * p.log2();
            }
        }
    }
    h / rows.len() as f64
}

pub fn kl_bits(rows: &[[f64; 4]], bg: &[f64; 4]) -> f64 {
    let mut d = 0.0;
    for r in rows {
        for (b, &p) in r.iter().enumerate() {
            if p > 0.0 {
                d += p * (p / bg[b]).log2();
            }
        }
    }
    d / rows.len() as f64
}

pub fn hamming(a: &str, b: &str) -> usize {
    assert_eq!(a.len(), b.len());
    a.chars()
        .zip(b.chars())
        .filter(|(x, y)| !x.eq_ignore_ascii_case(y))
        .count()
}

pub fn reverse_complement_letters(s: &str) -> String {
    s.chars().rev().map(complement_letter).collect()
}

/// Distance to the closer of the two orientations.
pub fn strand_hamming(found: &str, planted: &str) -> usize {
    hamming(found, planted).min(hamming(&reverse_complement_letters(found), planted))
}

/// Keeps the highest fitness seen per cell; ties keep the earlier entry.
#[derive(Default)]
pub struct ShadowArchive {
    pub cells: HashMap<(usize, usize), (f64, usize)>,
}

impl ShadowArchive {
    pub fn offer(&mut self, cell: (usize, usize), fitness: f64, tag: usize) {
        match self.cells.get(&cell) {
            Some(&(f, _)) if fitness <= f => {}
            _ => {
                self.cells.insert(cell, (fitness, tag));
            }
        }
    }
}

/// Independent grid binning: clip to the bounds, floor, cap at the last cell.
pub fn shadow_cell(v: [f64; 2], lo: [f64; 2], hi: [f64; 2], dims: [usize; 2]) -> (usize, usize) {
    let idx = |d: usize| {
        let x = v[d].clamp(lo[d], hi[d]);
        let t = ((x - lo[d]) / (hi[d] - lo[d]) * dims[d] as f64).floor() as usize;
        t.min(dims[d] - 1)
    };
    (idx(0), idx(1))
}

pub fn sample_std(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let m = v.iter().sum::<f64>() / n;
    (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

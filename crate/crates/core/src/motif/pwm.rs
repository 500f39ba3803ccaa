use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Dirichlet, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{self, N};

/// Probability floor applied to every PWM entry.
pub const EPSILON: f64 = 1e-4;
/// Rows within this distance of the simplex interior are left untouched.
const ROW_TOLERANCE: f64 = 1e-12;

/// Position weight matrix: `L` rows, each a distribution over `A, C, G, T`.
/// Every entry is at least [`EPSILON`] and every row sums to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 4]>", into = "Vec<[f64; 4]>")]
pub struct Pwm {
    rows: Vec<[f64; 4]>,
}

impl Pwm {
    /// Build from arbitrary non-negative rows; each row is projected onto
    /// the floored simplex.
    pub fn from_rows(rows: Vec<[f64; 4]>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("pwm", "motif length must be at least 1"));
        }
        Ok(Pwm {
            rows: rows.into_iter().map(project_row).collect(),
        })
    }

    /// Rebuild from a flattened row-major `L × 4` genome, repairing it.
    pub fn from_flat(values: &[f64]) -> Result<Self> {
        if values.is_empty() || !values.len().is_multiple_of(4) {
            return Err(Error::invalid("pwm", format!("flat length {} is not a positive multiple of 4", values.len())));
        }
        Pwm::from_rows(values.chunks_exact(4).map(|c| [c[0], c[1], c[2], c[3]]).collect())
    }

    pub fn uniform(len: usize) -> Result<Self> {
        Pwm::from_rows(vec![[0.25; 4]; len])
    }

    /// Floored one-hot matrix for a consensus string.
    pub fn from_consensus(consensus: &str) -> Result<Self> {
        let rows = seq::encode(consensus)
            .into_iter()
            .map(|b| {
                if b == N {
                    [0.25; 4]
                } else {
                    let mut r = [0.0; 4];
                    r[b as usize] = 1.0;
                    r
                }
            })
            .collect();
        Pwm::from_rows(rows)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[[f64; 4]] {
        &self.rows
    }

    pub fn flatten(&self) -> Vec<f64> {
        self.rows.iter().flatten().copied().collect()
    }

    /// Opposite-strand motif: positions reversed, `A↔T` and `C↔G` swapped.
    pub fn reverse_complement(&self) -> Pwm {
        Pwm {
            rows: self.rows.iter().rev().map(|r| [r[3], r[2], r[1], r[0]]).collect(),
        }
    }
}

impl TryFrom<Vec<[f64; 4]>> for Pwm {
    type Error = Error;

    fn try_from(rows: Vec<[f64; 4]>) -> Result<Self> {
        Pwm::from_rows(rows)
    }
}

impl From<Pwm> for Vec<[f64; 4]> {
    fn from(p: Pwm) -> Self {
        p.rows
    }
}

/// Project a row onto `{x : x_b ≥ ε, Σ x_b = 1}`: entries that would fall
/// below the floor are pinned to it and the remaining mass is shared
/// proportionally among the rest.
pub fn project_row(row: [f64; 4]) -> [f64; 4] {
    let row = row.map(|x| if x.is_finite() { x } else { 0.0 });
    let sum: f64 = row.iter().sum();
    if row.iter().all(|&x| x >= EPSILON) && (sum - 1.0).abs() <= ROW_TOLERANCE {
        return row;
    }
    let mut pinned = row.map(|x| x < EPSILON);
    loop {
        let n_pinned = pinned.iter().filter(|&&p| p).count();
        if n_pinned == 4 {
            return [0.25; 4];
        }
        let mass = 1.0 - EPSILON * n_pinned as f64;
        let free: f64 = (0..4).filter(|&b| !pinned[b]).map(|b| row[b]).sum();
        let mut out = [EPSILON; 4];
        if free <= 0.0 {
            let share = mass / (4 - n_pinned) as f64;
            for b in 0..4 {
                if !pinned[b] {
                    out[b] = share;
                }
            }
            return out;
        }
        let mut newly = false;
        for b in 0..4 {
            if !pinned[b] {
                out[b] = row[b] * mass / free;
                if out[b] < EPSILON {
                    pinned[b] = true;
                    newly = true;
                }
            }
        }
        if !newly {
            return out;
        }
    }
}

/// Each row drawn independently from a symmetric Dirichlet(`alpha`).
pub fn random_pwm(len: usize, alpha: f64, seed: u64) -> Result<Pwm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_pwm_with(len, alpha, &mut rng)
}

pub fn random_pwm_with<R: Rng + ?Sized>(len: usize, alpha: f64, rng: &mut R) -> Result<Pwm> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::invalid("alpha", "concentration must be positive"));
    }
    let dirichlet = Dirichlet::new([alpha; 4]).map_err(|e| Error::invalid("alpha", e.to_string()))?;
    Pwm::from_rows((0..len).map(|_| dirichlet.sample(rng)).collect())
}

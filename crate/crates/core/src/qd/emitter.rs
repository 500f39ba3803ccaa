use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motif::{random_pwm_with, Pwm};
use crate::qd::Archive;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmitterConfig {
    pub sigma_iso: f64,
    pub sigma_line: f64,
    pub batch: usize,
    /// Number of Iso+Line emitters; each contributes `batch` candidates.
    pub emitters: usize,
}

impl Default for EmitterConfig {
    fn default() -> Self {
        EmitterConfig {
            sigma_iso: 0.12,
            sigma_line: 0.25,
            batch: 32,
            emitters: 1,
        }
    }
}

impl EmitterConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.sigma_iso >= 0.0 && self.sigma_iso.is_finite()) {
            return Err(Error::invalid("sigma_iso", "must be a finite non-negative number"));
        }
        if !(self.sigma_line >= 0.0 && self.sigma_line.is_finite()) {
            return Err(Error::invalid("sigma_line", "must be a finite non-negative number"));
        }
        if self.batch == 0 {
            return Err(Error::invalid("batch", "must be at least 1"));
        }
        if self.emitters == 0 {
            return Err(Error::invalid("emitters", "must be at least 1"));
        }
        Ok(())
    }

    pub fn candidates_per_generation(&self) -> usize {
        self.batch * self.emitters
    }
}

/// Iso+Line variation in the flattened `L × 4` genome space:
/// `x' = x_i + σ_iso·ζ + σ_line·η·(x_j − x_i)` with parents drawn uniformly
/// (with replacement) from the archive, followed by simplex repair.
#[derive(Debug, Clone, Copy)]
pub struct IsoLineEmitter {
    pub config: EmitterConfig,
    pub motif_len: usize,
    /// Dirichlet concentration for draws into an empty archive.
    pub alpha: f64,
}

impl IsoLineEmitter {
    pub fn emit_batch<R: Rng + ?Sized>(&self, archive: &Archive, rng: &mut R) -> Result<Vec<Pwm>> {
        let n = self.config.batch;
        if archive.is_empty() {
            return (0..n).map(|_| random_pwm_with(self.motif_len, self.alpha, rng)).collect();
        }
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            let xi = archive.nth_filled(rng.random_range(0..archive.len())).pwm.flatten();
            let xj = archive.nth_filled(rng.random_range(0..archive.len())).pwm.flatten();
            let eta: f64 = rng.sample(StandardNormal);
            let child: Vec<f64> = xi
                .iter()
                .zip(&xj)
                .map(|(&a, &b)| {
                    let zeta: f64 = rng.sample(StandardNormal);
                    a + self.config.sigma_iso * zeta + self.config.sigma_line * eta * (b - a)
                })
                .collect();
            out.push(Pwm::from_flat(&child)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::{random_pwm, BehaviorDescriptor, Characterization, EPSILON};
    use crate::qd::{DescriptorBounds, Elite};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn empty() -> Archive {
        Archive::new(
            Characterization::Co,
            DescriptorBounds::new([0.0, 0.0], [1.0, 2.0]).unwrap(),
            [20, 20],
        )
        .unwrap()
    }

    fn emitter(sigma_iso: f64, sigma_line: f64) -> IsoLineEmitter {
        IsoLineEmitter {
            config: EmitterConfig {
                sigma_iso,
                sigma_line,
                ..EmitterConfig::default()
            },
            motif_len: 19,
            alpha: 1.0,
        }
    }

    fn with_elite(pwm: Pwm) -> Archive {
        let mut a = empty();
        a.try_insert(Elite {
            pwm,
            fitness: 0.1,
            descriptor: BehaviorDescriptor {
                characterization: Characterization::Co,
                values: [0.5, 1.0],
            },
            generation_added: 1,
        })
        .unwrap();
        a
    }

    #[test]
    fn empty_archive_gets_random_batch() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let batch = emitter(0.12, 0.25).emit_batch(&empty(), &mut rng).unwrap();
        assert_eq!(batch.len(), 32);
        assert!(batch.iter().all(|p| p.len() == 19));
        assert_ne!(batch[0], batch[1]);
    }

    #[test]
    fn zero_sigma_reproduces_parent() {
        let parent = random_pwm(19, 1.0, 4).unwrap();
        let a = with_elite(parent.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for child in emitter(0.0, 0.0).emit_batch(&a, &mut rng).unwrap() {
            assert_eq!(child, parent);
        }
    }

    #[test]
    fn children_are_valid() {
        let a = with_elite(Pwm::from_consensus("ACGTACGTACGTACGTACG").unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for child in emitter(0.5, 0.5).emit_batch(&a, &mut rng).unwrap() {
            for r in child.rows() {
                assert!((r.iter().sum::<f64>() - 1.0).abs() < 1e-9);
                assert!(r.iter().all(|&x| x >= EPSILON));
            }
        }
    }
}

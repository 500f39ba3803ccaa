use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motif::{evaluate, Characterization, EvalContext, Pwm, DEFAULT_MOTIF_LEN};
use crate::qd::{
    Archive, DescriptorBounds, Elite, EmitterConfig, GenerationRecord, InsertOutcome, IsoLineEmitter, RunMetrics,
    DEFAULT_DIMS,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub generations: usize,
    pub motif_len: usize,
    /// Dirichlet concentration for random motifs.
    pub alpha: f64,
    pub dims: [usize; 2],
    pub emitter: EmitterConfig,
    pub qd_offset: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            generations: 1000,
            motif_len: DEFAULT_MOTIF_LEN,
            alpha: 1.0,
            dims: DEFAULT_DIMS,
            emitter: EmitterConfig::default(),
            qd_offset: 0.0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.motif_len == 0 {
            return Err(Error::invalid("motif_len", "must be at least 1"));
        }
        if self.alpha.is_nan() || self.alpha <= 0.0 {
            return Err(Error::invalid("alpha", "must be positive"));
        }
        if !self.qd_offset.is_finite() {
            return Err(Error::invalid("qd_offset", "must be finite"));
        }
        self.emitter.validate()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GenerationStats {
    pub new_cells: usize,
    pub improved: usize,
    pub rejected: usize,
    pub failed: usize,
}

/// MAP-Elites driver over one evaluation context. Candidate evaluation is
/// data-parallel; insertion happens serially in batch order, so results do
/// not depend on thread scheduling.
pub struct MapElites<'a> {
    ctx: &'a EvalContext,
    characterization: Characterization,
    config: RunConfig,
    archive: Archive,
    metrics: RunMetrics,
    emitters: Vec<IsoLineEmitter>,
    rng: ChaCha8Rng,
    generation: usize,
}

impl<'a> MapElites<'a> {
    pub fn new(
        ctx: &'a EvalContext,
        characterization: Characterization,
        bounds: DescriptorBounds,
        config: RunConfig,
        seed: u64,
    ) -> Result<Self> {
        config.validate()?;
        ctx.fitness.validate()?;
        let emitter = IsoLineEmitter {
            config: EmitterConfig {
                emitters: 1,
                ..config.emitter
            },
            motif_len: config.motif_len,
            alpha: config.alpha,
        };
        Ok(MapElites {
            ctx,
            characterization,
            archive: Archive::new(characterization, bounds, config.dims)?,
            metrics: RunMetrics::new(config.qd_offset),
            emitters: vec![emitter; config.emitter.emitters],
            config,
            rng: ChaCha8Rng::seed_from_u64(seed),
            generation: 0,
        })
    }

    pub fn archive(&self) -> &Archive {
        &self.archive
    }

    pub fn metrics(&self) -> &RunMetrics {
        &self.metrics
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    /// Ask every emitter for a batch, evaluate, insert, and log one record.
    pub fn step(&mut self) -> Result<GenerationStats> {
        self.generation += 1;
        let mut candidates: Vec<Pwm> = Vec::with_capacity(self.config.emitter.candidates_per_generation());
        for e in &self.emitters {
            candidates.extend(e.emit_batch(&self.archive, &mut self.rng)?);
        }
        let (ctx, ch) = (self.ctx, self.characterization);
        let evaluated: Vec<_> = candidates
            .into_par_iter()
            .map(|pwm| evaluate(&pwm, ch, ctx).map(|ev| (pwm, ev)))
            .collect();

        let mut stats = GenerationStats::default();
        for result in evaluated {
            let Ok((pwm, ev)) = result else {
                stats.failed += 1;
                continue;
            };
            let elite = Elite {
                pwm,
                fitness: ev.fitness,
                descriptor: ev.descriptor,
                generation_added: self.generation,
            };
            match self.archive.try_insert(elite) {
                Ok(InsertOutcome::NewCell) => stats.new_cells += 1,
                Ok(InsertOutcome::Improved) => stats.improved += 1,
                Ok(InsertOutcome::Rejected) => stats.rejected += 1,
                Err(_) => stats.failed += 1,
            }
        }
        self.metrics.records.push(GenerationRecord::snapshot(
            self.generation,
            &self.archive,
            self.config.qd_offset,
            stats.failed,
        ));
        Ok(stats)
    }

    pub fn finish(self) -> RunOutput {
        RunOutput {
            archive: self.archive,
            metrics: self.metrics,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub archive: Archive,
    pub metrics: RunMetrics,
}

/// Run `config.generations` generations from an empty archive.
pub fn run(
    ctx: &EvalContext,
    characterization: Characterization,
    bounds: DescriptorBounds,
    config: &RunConfig,
    seed: u64,
) -> Result<RunOutput> {
    let mut me = MapElites::new(ctx, characterization, bounds, *config, seed)?;
    for _ in 0..config.generations {
        me.step()?;
    }
    Ok(me.finish())
}

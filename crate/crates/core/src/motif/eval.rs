use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::motif::calibrate::threshold_from_scores;
use crate::motif::descriptors::{
    entropy, gc_content, information_content, support_from_profile, tail_behavior_with,
};
use crate::motif::{
    fitness, BehaviorDescriptor, Characterization, FitnessConfig, Pwm, Scanner, SupportRule, TailQuantiles,
};
use crate::seq::{empirical_background, BackgroundDistribution, SequenceSet};

/// How the support threshold is obtained for a candidate motif.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdPolicy {
    /// Calibrate each motif on the background at this percentile.
    PerMotif { percentile: f64 },
    /// One precomputed threshold for every motif.
    Fixed(SupportRule),
}

impl Default for ThresholdPolicy {
    fn default() -> Self {
        ThresholdPolicy::PerMotif { percentile: 95.0 }
    }
}

/// Everything a candidate is judged against: one subset's foreground and
/// background plus the scoring parameters.
#[derive(Debug, Clone)]
pub struct EvalContext {
    pub foreground: SequenceSet,
    pub background: SequenceSet,
    pub bg: BackgroundDistribution,
    pub fitness: FitnessConfig,
    pub threshold: ThresholdPolicy,
    pub tail: TailQuantiles,
}

impl EvalContext {
    /// Context with the background distribution estimated from `background`.
    pub fn new(foreground: SequenceSet, background: SequenceSet) -> Result<Self> {
        let bg = empirical_background(&background)?;
        Ok(EvalContext {
            foreground,
            background,
            bg,
            fitness: FitnessConfig::default(),
            threshold: ThresholdPolicy::default(),
            tail: TailQuantiles::default(),
        })
    }

    pub fn support_rule(&self, scanner: &Scanner) -> Result<SupportRule> {
        match self.threshold {
            ThresholdPolicy::Fixed(rule) => Ok(rule),
            ThresholdPolicy::PerMotif { percentile } => {
                threshold_from_scores(&scanner.profile(&self.background).best_hits, percentile)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub fitness: f64,
    pub descriptor: BehaviorDescriptor,
}

/// Fitness and descriptor from a single foreground scan.
pub fn evaluate(pwm: &Pwm, characterization: Characterization, ctx: &EvalContext) -> Result<Evaluation> {
    let scanner = Scanner::new(pwm, &ctx.bg);
    let profile = scanner.profile(&ctx.foreground);
    let fit = fitness(&profile, &ctx.fitness)?;
    let values = match characterization {
        Characterization::Co => [gc_content(pwm), entropy(pwm)],
        Characterization::Sp => {
            let rule = ctx.support_rule(&scanner)?;
            [information_content(pwm, &ctx.bg), support_from_profile(&profile, rule.threshold)?]
        }
        Characterization::Rb => {
            let rule = ctx.support_rule(&scanner)?;
            [support_from_profile(&profile, rule.threshold)?, tail_behavior_with(&profile, ctx.tail)?]
        }
    };
    Ok(Evaluation {
        fitness: fit,
        descriptor: BehaviorDescriptor {
            characterization,
            values,
        },
    })
}

pub fn describe(pwm: &Pwm, characterization: Characterization, ctx: &EvalContext) -> Result<BehaviorDescriptor> {
    if characterization == Characterization::Co {
        return Ok(BehaviorDescriptor {
            characterization,
            values: [gc_content(pwm), entropy(pwm)],
        });
    }
    evaluate(pwm, characterization, ctx).map(|e| e.descriptor)
}

/// Top-k trimmed fitness of `pwm` on the context foreground.
pub fn motif_fitness(pwm: &Pwm, ctx: &EvalContext) -> Result<f64> {
    fitness(&Scanner::new(pwm, &ctx.bg).profile(&ctx.foreground), &ctx.fitness)
}

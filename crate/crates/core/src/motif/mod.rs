//! PWM genome, log-odds scanning, fitness, descriptors and calibration.

pub mod calibrate;
pub mod descriptors;
pub mod eval;
pub mod fitness;
pub mod pwm;
pub mod scan;

pub use calibrate::{calibrate_support_threshold, percentile, quantile, SupportRule};
pub use descriptors::{
    at_content, entropy, gc_content, information_content, support, support_from_profile, tail_behavior,
    tail_behavior_with, BehaviorDescriptor, Characterization, TailQuantiles,
};
pub use eval::{describe, evaluate, motif_fitness, EvalContext, Evaluation, ThresholdPolicy};
pub use fitness::{fitness, FitnessConfig};
pub use pwm::{project_row, random_pwm, random_pwm_with, Pwm, EPSILON};
pub use scan::{best_hit, log_odds, score_profile, Scanner, ScoreProfile};

/// Default motif length.
pub const DEFAULT_MOTIF_LEN: usize = 19;

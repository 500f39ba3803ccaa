//! MAP-Elites: grid archive, Iso+Line emitter, descriptor bounds and the
//! evolutionary loop.

pub mod archive;
pub mod bounds;
pub mod emitter;
pub mod engine;
pub mod metrics;

pub use archive::{Archive, DescriptorBounds, Elite, InsertOutcome, DEFAULT_DIMS};
pub use bounds::{bounds_from_samples, estimate_bounds, BoundsConfig};
pub use emitter::{EmitterConfig, IsoLineEmitter};
pub use engine::{run, GenerationStats, MapElites, RunConfig, RunOutput};
pub use metrics::{GenerationRecord, RunMetrics};

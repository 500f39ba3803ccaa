//! Quality-diversity motif discovery.
//!
//! Candidate motifs are position weight matrices evolved with MAP-Elites
//! under a foreground/background log-odds fitness, while a two-dimensional
//! behavioral descriptor keeps structurally different motifs in separate
//! archive cells.
//!
//! - [`seq`]: FASTA I/O, background estimation, subsets, shuffled backgrounds
//! - [`motif`]: PWMs, scanning, fitness, descriptors, calibration
//! - [`qd`]: archive, Iso+Line emitter, descriptor bounds, the search loop
//! - [`meme`]: MEME minimal motif format
//! - [`report`]: archive snapshots, heatmaps, text logos, comparison tables
//! - [`experiment`]: the end-to-end protocol behind the `qdmotif` binary
//!
//! Runnable walkthroughs live in `examples/`; `cargo run --example` lists them.

pub mod error;
pub mod experiment;
pub mod meme;
pub mod motif;
pub mod qd;
pub mod report;
pub mod seq;

pub use error::{Error, Result};

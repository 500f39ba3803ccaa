//! Deterministic seed derivation from one master seed.
//!
//! Each random stream gets a counter; its seed is
//! `splitmix64(master + counter · 0x9E3779B97F4A7C15)`. Counters:
//!
//! | stream                            | counter                          |
//! |-----------------------------------|----------------------------------|
//! | foreground partition              | 1                                |
//! | background partition              | 2                                |
//! | shuffled background of subset `i` | `16 + i`                         |
//! | bounds sampling, subset `i`, BC `b` | `1024 + 64·i + 2·b`            |
//! | MAP-Elites run, subset `i`, BC `b`  | `1024 + 64·i + 2·b + 1`        |
//!
//! BC indices are 0 = ME.SP, 1 = ME.CO, 2 = ME.RB.

use crate::motif::Characterization;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    PartitionForeground,
    PartitionBackground,
    Shuffle { subset: usize },
    Bounds { subset: usize, bc: Characterization },
    Run { subset: usize, bc: Characterization },
}

fn bc_index(bc: Characterization) -> u64 {
    match bc {
        Characterization::Sp => 0,
        Characterization::Co => 1,
        Characterization::Rb => 2,
    }
}

impl Stream {
    pub fn counter(self) -> u64 {
        match self {
            Stream::PartitionForeground => 1,
            Stream::PartitionBackground => 2,
            Stream::Shuffle { subset } => 16 + subset as u64,
            Stream::Bounds { subset, bc } => 1024 + 64 * subset as u64 + 2 * bc_index(bc),
            Stream::Run { subset, bc } => 1024 + 64 * subset as u64 + 2 * bc_index(bc) + 1,
        }
    }
}

pub fn derive_seed(master: u64, stream: Stream) -> u64 {
    splitmix64(master.wrapping_add(stream.counter().wrapping_mul(GOLDEN)))
}

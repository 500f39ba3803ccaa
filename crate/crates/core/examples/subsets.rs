//! Partition a foreground set into disjoint subsets and build matched
//! dinucleotide-shuffled backgrounds for each.
//!
//!     cargo run --example subsets

use std::path::Path;

use qdmotif::experiment::{derive_seed, Stream};
use qdmotif::seq::{empirical_background, partition_subsets, read_fasta, shuffle_background, Role};

fn main() -> qdmotif::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/foreground.fa");
    let fg = read_fasta(&path, Role::Foreground)?;
    let master = 42;
    let parts = partition_subsets(&fg, 5, derive_seed(master, Stream::PartitionForeground))?;
    for (i, part) in parts.iter().enumerate() {
        let shuffled = shuffle_background(part, derive_seed(master, Stream::Shuffle { subset: i }))?;
        let (a, b) = (empirical_background(part)?, empirical_background(&shuffled)?);
        let m = part.manifest();
        println!(
            "{}: {} sequences, first ids {:?}; GC fg {:.3} vs shuffled {:.3}",
            m.subset_label,
            part.len(),
            &m.sequence_ids[..3],
            a.probs()[1] + a.probs()[2],
            b.probs()[1] + b.probs()[2],
        );
    }
    Ok(())
}

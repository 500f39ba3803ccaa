//! The whole protocol on the bundled fixture: five subsets, all three
//! characterizations, then baseline motifs scored against the archives.
//! Writes to a temporary directory unless an output path is given.
//!
//!     cargo run --release --example full_protocol -- [generations] [out]

use std::path::{Path, PathBuf};

use qdmotif::experiment::{cmd_eval_meme, cmd_run, Overrides};

fn main() -> qdmotif::Result<()> {
    let mut args = std::env::args().skip(1);
    let generations: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(50);
    let tmp = tempfile::tempdir().expect("temp dir");
    let out = args.next().map(PathBuf::from).unwrap_or_else(|| tmp.path().to_path_buf());

    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let config = fixtures.join("experiment.toml");
    let overrides = Overrides {
        generations: Some(generations),
        output: Some(out.clone()),
        ..Overrides::default()
    };
    for r in cmd_run(Some(&config), &overrides)? {
        println!(
            "subset-{} {}: coverage {:.3}, best {:.4}, mean {:.4}",
            r.subset,
            r.characterization,
            r.coverage,
            r.best_fitness.unwrap_or(f64::NAN),
            r.mean_fitness.unwrap_or(f64::NAN)
        );
    }
    cmd_eval_meme(&fixtures.join("truth.meme"), Some(&config), &overrides)?;
    print!("{}", std::fs::read_to_string(out.join("comparison.txt")).expect("comparison table"));
    Ok(())
}

//! Read MEME motifs, score them on held-out subsets and write them back out.
//!
//!     cargo run --example meme_interop

use qdmotif::experiment::{evaluate_meme, synthesize, ExperimentConfig, SynthParams};
use qdmotif::meme::{parse_meme, write_meme};
use qdmotif::motif::random_pwm;
use qdmotif::report::consensus;
use qdmotif::seq::write_fasta;

fn main() -> qdmotif::Result<()> {
    let dir = tempfile::tempdir().expect("temp dir");
    let data = synthesize(&SynthParams::default())?;
    std::fs::write(dir.path().join("fg.fa"), write_fasta(&data.foreground)).expect("write");
    std::fs::write(dir.path().join("bg.fa"), write_fasta(&data.background)).expect("write");

    let pwms = vec![data.truth.clone(), random_pwm(19, 1.0, 1)?, random_pwm(12, 0.3, 2)?];
    let names: Vec<String> = ["planted", "random_a", "random_b"].map(String::from).to_vec();
    let text = write_meme(&pwms, &names)?;
    for rec in parse_meme(&text)? {
        println!("{:>9}: width {:>2}  {}", rec.name, rec.width, consensus(&rec.to_pwm()?));
    }

    let cfg = ExperimentConfig {
        foreground: dir.path().join("fg.fa"),
        background: Some(dir.path().join("bg.fa")),
        ..ExperimentConfig::default()
    };
    for row in evaluate_meme(&text, &cfg)? {
        println!("{:>9} subset-{}  fitness {:.4}", row.motif, row.subset, row.fitness);
    }
    Ok(())
}

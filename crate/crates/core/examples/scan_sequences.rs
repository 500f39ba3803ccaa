//! Read FASTA, estimate a background, scan with a PWM on both strands and
//! turn the best-hit profile into a fitness.
//!
//!     cargo run --example scan_sequences

use std::path::Path;

use qdmotif::meme::parse_meme;
use qdmotif::motif::{fitness, log_odds, FitnessConfig, Pwm, Scanner};
use qdmotif::seq::{empirical_background, encode, read_fasta, Role};

fn main() -> qdmotif::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let fg = read_fasta(&dir.join("foreground.fa"), Role::Foreground)?;
    let bg = empirical_background(&fg)?;
    println!("{} sequences, background A/C/G/T {:.3?}", fg.len(), bg.probs());

    let text = std::fs::read_to_string(dir.join("truth.meme")).expect("fixture");
    let truth = parse_meme(&text)?[0].to_pwm()?;
    let window = encode("TGGCCACCAGGGGGCGCTA");
    println!("log-odds of the consensus window: {:.3}", log_odds(&truth, &window, &bg)?);

    for (name, pwm) in [("planted", truth), ("uniform", Pwm::uniform(19)?)] {
        let scanner = Scanner::new(&pwm, &bg);
        let profile = scanner.profile(&fg);
        let top = profile.best_hits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let f = fitness(&profile, &FitnessConfig::default())?;
        println!("{name:>8}: best hit {top:.3}, fitness {f:.4}, skipped {}", profile.skipped);
    }
    Ok(())
}

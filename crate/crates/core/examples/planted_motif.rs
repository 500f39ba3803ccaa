//! Plant a 19 bp site in synthetic sequences and recover it with MAP-Elites
//! under the GC-content/entropy characterization.
//!
//!     cargo run --release --example planted_motif -- [generations] [seed]

use qdmotif::experiment::{synthesize, SynthParams};
use qdmotif::motif::{motif_fitness, Characterization, EvalContext};
use qdmotif::qd::{estimate_bounds, BoundsConfig, MapElites, RunConfig};
use qdmotif::report::consensus;

fn main() -> qdmotif::Result<()> {
    let mut args = std::env::args().skip(1);
    let generations: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(200);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(7);

    let data = synthesize(&SynthParams::default())?;
    let ctx = EvalContext::new(data.foreground.clone(), data.background.clone())?;
    let truth_fitness = motif_fitness(&data.truth, &ctx)?;
    println!("planted   {}  fitness {truth_fitness:.4}", consensus(&data.truth));

    let ch = Characterization::Co;
    let bounds = estimate_bounds(ch, &ctx, 19, &BoundsConfig::default(), seed)?;
    println!("bounds    gc [{:.3}, {:.3}]  entropy [{:.3}, {:.3}]", bounds.lo[0], bounds.hi[0], bounds.lo[1], bounds.hi[1]);

    let config = RunConfig {
        generations,
        ..RunConfig::default()
    };
    let mut me = MapElites::new(&ctx, ch, bounds, config, seed)?;
    for g in 1..=generations {
        me.step()?;
        if g % 25 == 0 || g == generations {
            let r = me.metrics().last().expect("record");
            let best = me.archive().best().expect("non-empty archive");
            println!(
                "gen {g:>4}  coverage {:.3}  best {:.4}  qd {:.2}  {}",
                r.coverage,
                best.fitness,
                r.qd_score,
                consensus(&best.pwm)
            );
        }
    }
    let best = me.archive().best().expect("non-empty archive");
    println!("ratio to planted: {:.3}", best.fitness / truth_fitness);
    Ok(())
}

//! Behavior descriptors under the three characterizations, with the support
//! threshold calibrated on background scores.
//!
//!     cargo run --example descriptors

use qdmotif::experiment::{synthesize, SynthParams};
use qdmotif::motif::{
    calibrate_support_threshold, entropy, evaluate, gc_content, information_content, random_pwm, Characterization,
    EvalContext, Pwm,
};

fn main() -> qdmotif::Result<()> {
    let data = synthesize(&SynthParams::default())?;
    let ctx = EvalContext::new(data.foreground.clone(), data.background.clone())?;
    let motifs = [
        ("planted", data.truth.clone()),
        ("uniform", Pwm::uniform(19)?),
        ("random", random_pwm(19, 1.0, 3)?),
    ];
    for (name, pwm) in &motifs {
        println!(
            "{name:>8}: IC {:.3} bits, entropy {:.3} bits, GC {:.3}",
            information_content(pwm, &ctx.bg),
            entropy(pwm),
            gc_content(pwm)
        );
        let rule = calibrate_support_threshold(pwm, &data.background, &ctx.bg, 95.0)?;
        println!("          support threshold (p95 of background) {:.3}", rule.threshold);
        for ch in Characterization::ALL {
            let e = evaluate(pwm, ch, &ctx)?;
            let [a, b] = ch.axis_names();
            println!(
                "          {}: fitness {:.4}  {a} {:.3}  {b} {:.3}",
                ch.name(),
                e.fitness,
                e.descriptor.values[0],
                e.descriptor.values[1]
            );
        }
    }
    Ok(())
}

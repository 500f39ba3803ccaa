//! Short MAP-Elites run followed by the reporting helpers: archive export,
//! heatmap grid, logo table and a method comparison table.
//!
//!     cargo run --release --example archive_report

use qdmotif::experiment::{synthesize, SynthParams};
use qdmotif::motif::{motif_fitness, Characterization, EvalContext};
use qdmotif::qd::{estimate_bounds, run, BoundsConfig, RunConfig};
use qdmotif::report::{
    comparison_table, consensus, export_archive, heatmap_csv, heatmap_grid, logo_csv, ExportFormat, MethodFitness,
};

fn main() -> qdmotif::Result<()> {
    let data = synthesize(&SynthParams::default())?;
    let ctx = EvalContext::new(data.foreground.clone(), data.background.clone())?;
    let ch = Characterization::Rb;
    let bounds = estimate_bounds(ch, &ctx, 19, &BoundsConfig::default(), 1)?;
    let cfg = RunConfig {
        generations: 60,
        ..RunConfig::default()
    };
    let out = run(&ctx, ch, bounds, &cfg, 1)?;
    let archive = &out.archive;
    println!("{} elites, coverage {:.3}", archive.len(), archive.coverage());

    let csv = export_archive(archive, ExportFormat::Csv)?;
    println!("archive.csv header: {}", csv.lines().next().unwrap_or_default().split(',').take(8).collect::<Vec<_>>().join(","));
    let json = export_archive(archive, ExportFormat::Json)?;
    println!("archive.json: {} bytes", json.len());

    println!("heatmap (rows = first axis, '#' filled):");
    for row in heatmap_grid(archive) {
        println!("  {}", row.iter().map(|c| if c.is_some() { '#' } else { '.' }).collect::<String>());
    }
    let _ = heatmap_csv(&heatmap_grid(archive));

    let best = archive.best().expect("non-empty archive");
    println!("best elite {} fitness {:.4}", consensus(&best.pwm), best.fitness);
    for line in logo_csv(&best.pwm).lines().take(4) {
        println!("  {line}");
    }
    println!("{}", out.metrics.to_csv().lines().last().unwrap_or_default());

    let all: Vec<f64> = archive.elites().map(|(_, e)| e.fitness).collect();
    let table = comparison_table(&[
        MethodFitness::new("planted", vec![motif_fitness(&data.truth, &ctx)?]),
        MethodFitness::new(ch.name(), all),
    ])?;
    print!("{}", table.to_text());
    Ok(())
}

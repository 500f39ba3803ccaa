//! End-to-end experiment protocol: ingest, partition, calibrate, run
//! MAP-Elites per subset and characterization, evaluate baseline motifs,
//! and write reports.
//!
//! Output layout of [`cmd_run`]:
//!
//! ```text
//! <output>/
//!   config.resolved.toml        fully resolved config, usable with --config
//!   subsets.json                foreground/background ids per subset
//!   summary.csv                 one row per (subset, characterization)
//!   subset-<i>/<BC>/
//!     archive.json heatmap.csv metrics.csv manifest.json
//! ```

pub mod config;
pub mod seeds;

use std::fs;
use std::path::{Path, PathBuf};

use log::{info, warn};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meme::{parse_meme, write_meme};
use crate::motif::{motif_fitness, Characterization, EvalContext, Pwm, ThresholdPolicy};
use crate::qd::{estimate_bounds, run, DescriptorBounds};
use crate::report::{
    comparison_table, consensus, export_archive, heatmap_csv, heatmap_grid, load_archive_json, logo_csv,
    ExportFormat, MethodFitness,
};
use crate::seq::{
    self, partition_subsets, read_fasta, shuffle_background, write_fasta, Role, Sequence, SequenceSet,
    SubsetManifest,
};

pub use config::{parse_characterizations, ExperimentConfig, Overrides};
pub use seeds::{derive_seed, Stream};

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// One subset's evaluation context plus the ids that went into it.
pub struct Subset {
    pub index: usize,
    pub label: String,
    pub context: EvalContext,
}

/// Rebuild the subset contexts exactly as a run with `cfg` sees them.
pub fn prepare_subsets(cfg: &ExperimentConfig) -> Result<Vec<Subset>> {
    let fg = read_fasta(&cfg.foreground, Role::Foreground)?;
    let fg_parts = partition_subsets(&fg, cfg.n_subsets, derive_seed(cfg.seed, Stream::PartitionForeground))?;
    let bg_parts = match &cfg.background {
        Some(path) => {
            let bg = read_fasta(path, Role::Background)?;
            partition_subsets(&bg, cfg.n_subsets, derive_seed(cfg.seed, Stream::PartitionBackground))?
        }
        None => {
            warn!("no background FASTA given; using dinucleotide-shuffled foreground as background");
            fg_parts
                .iter()
                .enumerate()
                .map(|(i, f)| shuffle_background(f, derive_seed(cfg.seed, Stream::Shuffle { subset: i })))
                .collect::<Result<_>>()?
        }
    };
    fg_parts
        .into_iter()
        .zip(bg_parts)
        .enumerate()
        .map(|(index, (f, b))| {
            let label = f.subset_label().unwrap_or_default().to_string();
            let mut context = EvalContext::new(f, b)?;
            context.fitness = cfg.fitness_config();
            context.threshold = ThresholdPolicy::PerMotif {
                percentile: cfg.support_percentile,
            };
            context.tail = cfg.tail_quantiles();
            Ok(Subset { index, label, context })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SubsetsFile {
    foreground: Vec<SubsetManifest>,
    background: Vec<SubsetManifest>,
}

/// Everything needed to reproduce one (subset, characterization) run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subset: usize,
    pub subset_label: String,
    pub characterization: Characterization,
    pub master_seed: u64,
    pub bounds_seed: u64,
    pub run_seed: u64,
    pub bounds: DescriptorBounds,
    pub background_probs: [f64; 4],
    pub config: ExperimentConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub subset: usize,
    pub characterization: Characterization,
    pub dir: PathBuf,
    pub coverage: f64,
    pub best_fitness: Option<f64>,
    pub mean_fitness: Option<f64>,
    pub qd_score: f64,
}

pub fn run_dir(output: &Path, subset: usize, ch: Characterization) -> PathBuf {
    output.join(format!("subset-{subset}")).join(ch.name())
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Execute the full protocol for a resolved, validated config.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<RunSummary>> {
    cfg.validate()?;
    let characterizations = cfg.characterization_list()?;
    let subsets = prepare_subsets(cfg)?;
    let mut resolved = cfg.clone();
    resolved.foreground = absolute(&cfg.foreground);
    resolved.background = cfg.background.as_deref().map(absolute);
    resolved.output = absolute(&cfg.output);
    write_file(&cfg.output.join("config.resolved.toml"), &resolved.to_toml()?)?;
    let manifests = SubsetsFile {
        foreground: subsets.iter().map(|s| s.context.foreground.manifest()).collect(),
        background: subsets
            .iter()
            .map(|s| {
                let mut m = s.context.background.manifest();
                m.subset_label = s.label.clone();
                m
            })
            .collect(),
    };
    write_file(&cfg.output.join("subsets.json"), &(serde_json::to_string_pretty(&manifests)? + "\n"))?;

    let run_cfg = cfg.run_config();
    let mut summaries = Vec::new();
    for subset in &subsets {
        for &ch in &characterizations {
            let bounds_seed = derive_seed(cfg.seed, Stream::Bounds { subset: subset.index, bc: ch });
            let run_seed = derive_seed(cfg.seed, Stream::Run { subset: subset.index, bc: ch });
            let bounds = estimate_bounds(ch, &subset.context, cfg.motif_len, &cfg.bounds_config(), bounds_seed)?;
            info!("{} {}: bounds {:?} .. {:?}", subset.label, ch, bounds.lo, bounds.hi);
            let out = run(&subset.context, ch, bounds, &run_cfg, run_seed)?;
            let dir = run_dir(&cfg.output, subset.index, ch);
            write_file(&dir.join("archive.json"), &export_archive(&out.archive, ExportFormat::Json)?)?;
            write_file(&dir.join("heatmap.csv"), &heatmap_csv(&heatmap_grid(&out.archive)))?;
            write_file(&dir.join("metrics.csv"), &out.metrics.to_csv())?;
            let manifest = RunManifest {
                subset: subset.index,
                subset_label: subset.label.clone(),
                characterization: ch,
                master_seed: cfg.seed,
                bounds_seed,
                run_seed,
                bounds,
                background_probs: *subset.context.bg.probs(),
                config: resolved.clone(),
            };
            write_file(&dir.join("manifest.json"), &(serde_json::to_string_pretty(&manifest)? + "\n"))?;
            info!(
                "{} {}: coverage {:.3}, best {:?}, failed {}",
                subset.label,
                ch,
                out.archive.coverage(),
                out.archive.best_fitness(),
                out.metrics.total_failed()
            );
            summaries.push(RunSummary {
                subset: subset.index,
                characterization: ch,
                dir,
                coverage: out.archive.coverage(),
                best_fitness: out.archive.best_fitness(),
                mean_fitness: out.archive.mean_fitness(),
                qd_score: out.archive.qd_score(cfg.qd_offset),
            });
        }
    }
    let mut csv = String::from("subset,characterization,coverage,best_fitness,mean_fitness,qd_score\n");
    for s in &summaries {
        csv.push_str(&format!(
            "subset-{},{},{},{},{},{}\n",
            s.subset,
            s.characterization,
            s.coverage,
            opt(s.best_fitness),
            opt(s.mean_fitness),
            s.qd_score
        ));
    }
    write_file(&cfg.output.join("summary.csv"), &csv)?;
    Ok(summaries)
}

fn absolute(p: &Path) -> PathBuf {
    std::path::absolute(p).unwrap_or_else(|_| p.to_path_buf())
}

fn load_config(config_path: Option<&Path>, overrides: &Overrides) -> Result<ExperimentConfig> {
    let mut cfg = match config_path {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    cfg.apply(overrides);
    cfg.validate()?;
    Ok(cfg)
}

/// `run`: the config file plus command-line overrides.
pub fn cmd_run(config_path: Option<&Path>, overrides: &Overrides) -> Result<Vec<RunSummary>> {
    run_experiment(&load_config(config_path, overrides)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MemeEvaluation {
    pub motif: String,
    pub subset: usize,
    pub fitness: f64,
}

/// Score each motif of a MEME file on every subset with the same fitness
/// used by the runs.
pub fn evaluate_meme(meme_text: &str, cfg: &ExperimentConfig) -> Result<Vec<MemeEvaluation>> {
    let records = parse_meme(meme_text)?;
    let subsets = prepare_subsets(cfg)?;
    let mut rows = Vec::new();
    for r in &records {
        let pwm = r.to_pwm()?;
        for s in &subsets {
            rows.push(MemeEvaluation {
                motif: r.name.clone(),
                subset: s.index,
                fitness: motif_fitness(&pwm, &s.context)?,
            });
        }
    }
    Ok(rows)
}

/// `eval-meme`: writes `meme_eval.csv`, and `comparison.{csv,txt}` against
/// any archives already present under the output directory.
pub fn cmd_eval_meme(meme_path: &Path, config_path: Option<&Path>, overrides: &Overrides) -> Result<Vec<MemeEvaluation>> {
    let cfg = load_config(config_path, overrides)?;
    let rows = evaluate_meme(&read_file(meme_path)?, &cfg)?;
    let mut csv = String::from("motif,subset,fitness\n");
    for r in &rows {
        csv.push_str(&format!("{},subset-{},{}\n", r.motif, r.subset, r.fitness));
    }
    write_file(&cfg.output.join("meme_eval.csv"), &csv)?;

    let mut entries = Vec::new();
    if !rows.is_empty() {
        let per_subset: Vec<f64> = (0..cfg.n_subsets)
            .map(|i| {
                let v: Vec<f64> = rows.iter().filter(|r| r.subset == i).map(|r| r.fitness).collect();
                v.iter().sum::<f64>() / v.len() as f64
            })
            .collect();
        let peak = rows.iter().map(|r| r.fitness).fold(f64::NEG_INFINITY, f64::max);
        entries.push(MethodFitness::new("MEME", per_subset).with_peak(peak));
    }
    for ch in Characterization::ALL {
        let mut means = Vec::new();
        let mut peak = f64::NEG_INFINITY;
        for i in 0..cfg.n_subsets {
            let path = run_dir(&cfg.output, i, ch).join("archive.json");
            if !path.exists() {
                continue;
            }
            let archive = load_archive_json(&read_file(&path)?)?;
            if let (Some(m), Some(b)) = (archive.mean_fitness(), archive.best_fitness()) {
                means.push(m);
                peak = peak.max(b);
            }
        }
        if !means.is_empty() {
            entries.push(MethodFitness::new(ch.name(), means).with_peak(peak));
        }
    }
    if !entries.is_empty() {
        let table = comparison_table(&entries)?;
        write_file(&cfg.output.join("comparison.csv"), &table.to_csv())?;
        write_file(&cfg.output.join("comparison.txt"), &table.to_text())?;
    }
    Ok(rows)
}

/// Default planted consensus: a 19 bp CTCF-like core site.
pub const DEFAULT_CONSENSUS: &str = "TGGCCACCAGGGGGCGCTA";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthParams {
    pub n_sequences: usize,
    pub length: usize,
    pub consensus: String,
    pub plant_rate: f64,
    pub seed: u64,
}

impl Default for SynthParams {
    fn default() -> Self {
        SynthParams {
            n_sequences: 200,
            length: 100,
            consensus: DEFAULT_CONSENSUS.into(),
            plant_rate: 0.8,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthData {
    pub foreground: SequenceSet,
    pub background: SequenceSet,
    pub truth: Pwm,
    /// Ids of the sequences carrying the planted site, with its start.
    pub planted: Vec<(String, usize)>,
}

/// Uniform random sequences with the consensus written, forward strand, into
/// `round(plant_rate · n)` of them; background is their dinucleotide shuffle.
pub fn synthesize(p: &SynthParams) -> Result<SynthData> {
    let site = seq::encode(&p.consensus);
    if site.is_empty() || site.contains(&seq::N) {
        return Err(Error::invalid("consensus", "must be a non-empty ACGT string"));
    }
    if site.len() > p.length {
        return Err(Error::invalid(
            "consensus",
            format!("length {} exceeds sequence length {}", site.len(), p.length),
        ));
    }
    if !(0.0..=1.0).contains(&p.plant_rate) {
        return Err(Error::invalid("plant_rate", "must be in [0, 1]"));
    }
    if p.n_sequences == 0 {
        return Err(Error::invalid("n_sequences", "must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n_planted = (p.plant_rate * p.n_sequences as f64).round() as usize;
    let mut order: Vec<usize> = (0..p.n_sequences).collect();
    order.shuffle(&mut rng);
    let mut carries = vec![false; p.n_sequences];
    for &k in &order[..n_planted] {
        carries[k] = true;
    }
    let mut seqs = Vec::with_capacity(p.n_sequences);
    let mut planted = Vec::new();
    for (i, &carry) in carries.iter().enumerate() {
        let mut bases: Vec<u8> = (0..p.length).map(|_| rng.random_range(0..4u8)).collect();
        let id = format!("fg{i}");
        if carry {
            let start = rng.random_range(0..=p.length - site.len());
            bases[start..start + site.len()].copy_from_slice(&site);
            planted.push((id.clone(), start));
        }
        seqs.push(Sequence::new(id, bases)?);
    }
    let foreground = SequenceSet::new(Role::Foreground, seqs)?;
    let background = shuffle_background(&foreground, p.seed.wrapping_add(1))?;
    Ok(SynthData {
        foreground,
        background,
        truth: Pwm::from_consensus(&p.consensus)?,
        planted,
    })
}

/// `synth`: writes `foreground.fa`, `background.fa` and `truth.meme`.
pub fn cmd_synth(p: &SynthParams, out: &Path) -> Result<SynthData> {
    let data = synthesize(p)?;
    write_file(&out.join("foreground.fa"), &write_fasta(&data.foreground))?;
    write_file(&out.join("background.fa"), &write_fasta(&data.background))?;
    write_file(&out.join("truth.meme"), &write_meme(std::slice::from_ref(&data.truth), &["planted".into()])?)?;
    Ok(data)
}

/// `export`: `archive.csv`, `heatmap.csv`, `logo.csv` (best elite) and
/// `elites.meme` from an `archive.json`. Returns the best elite's consensus.
pub fn cmd_export(archive_json: &Path, out: &Path) -> Result<Option<String>> {
    let archive = load_archive_json(&read_file(archive_json)?)?;
    write_file(&out.join("archive.csv"), &export_archive(&archive, ExportFormat::Csv)?)?;
    write_file(&out.join("heatmap.csv"), &heatmap_csv(&heatmap_grid(&archive)))?;
    let (pwms, names): (Vec<Pwm>, Vec<String>) = archive
        .elites()
        .map(|((i, j), e)| (e.pwm.clone(), format!("cell_{i}_{j}")))
        .unzip();
    write_file(&out.join("elites.meme"), &write_meme(&pwms, &names)?)?;
    let best = archive.best();
    if let Some(b) = best {
        write_file(&out.join("logo.csv"), &logo_csv(&b.pwm))?;
    }
    Ok(best.map(|b| consensus(&b.pwm)))
}

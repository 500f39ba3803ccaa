use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdmotif::experiment::{self, Overrides, SynthParams, DEFAULT_CONSENSUS};

#[derive(Parser)]
#[command(name = "qdmotif", version, about = "MAP-Elites motif discovery over DNA position weight matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment config (key = value TOML)
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Characterizations: sp, co, rb, all, or a comma list
    #[arg(long)]
    bc: Option<String>,
    #[arg(long)]
    generations: Option<usize>,
    /// Number of disjoint subsets
    #[arg(long)]
    subsets: Option<usize>,
}

impl Common {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            output: self.out.clone(),
            characterizations: self.bc.clone(),
            generations: self.generations,
            n_subsets: self.subsets,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run MAP-Elites on every subset and characterization
    Run(Common),
    /// Evaluate motifs from a MEME minimal-format file on every subset
    EvalMeme {
        meme: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Write a planted-motif foreground, shuffled background and truth motif
    Synth {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        length: usize,
        #[arg(long, default_value = DEFAULT_CONSENSUS)]
        consensus: String,
        #[arg(long, default_value_t = 0.8)]
        plant_rate: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "synthetic")]
        out: PathBuf,
    },
    /// Convert an archive.json into CSV tables, a logo table and MEME motifs
    Export {
        archive: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Run(c) => experiment::cmd_run(c.config.as_deref(), &c.overrides()).map(|runs| {
            for r in runs {
                println!(
                    "subset-{} {}: coverage {:.3} best {} mean {}",
                    r.subset,
                    r.characterization,
                    r.coverage,
                    r.best_fitness.map_or("-".into(), |f| format!("{f:.4}")),
                    r.mean_fitness.map_or("-".into(), |f| format!("{f:.4}")),
                );
            }
        }),
        Command::EvalMeme { meme, common } => {
            experiment::cmd_eval_meme(&meme, common.config.as_deref(), &common.overrides()).map(|rows| {
                for r in rows {
                    println!("{}\tsubset-{}\t{:.6}", r.motif, r.subset, r.fitness);
                }
            })
        }
        Command::Synth {
            n,
            length,
            consensus,
            plant_rate,
            seed,
            out,
        } => {
            let params = SynthParams {
                n_sequences: n,
                length,
                consensus,
                plant_rate,
                seed,
            };
            experiment::cmd_synth(&params, &out)
                .map(|d| println!("wrote {} sequences ({} planted) to {}", d.foreground.len(), d.planted.len(), out.display()))
        }
        Command::Export { archive, out } => experiment::cmd_export(&archive, &out).map(|best| {
            if let Some(c) = best {
                println!("best elite consensus: {c}");
            }
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

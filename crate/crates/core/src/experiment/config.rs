//! Experiment configuration: a flat `key = value` TOML file.
//!
//! ```toml
//! foreground = "foreground.fa"
//! background = "background.fa"   # optional; shuffled foreground otherwise
//! characterizations = "all"      # or e.g. "sp,co"
//! generations = 1000
//! seed = 7
//! output = "runs"
//! ```
//!
//! Every other field has a default; relative paths resolve against the
//! directory holding the config file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motif::{Characterization, FitnessConfig, TailQuantiles, DEFAULT_MOTIF_LEN};
use crate::qd::{BoundsConfig, EmitterConfig, RunConfig, DEFAULT_DIMS};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub foreground: PathBuf,
    pub background: Option<PathBuf>,
    pub output: PathBuf,
    pub seed: u64,
    pub n_subsets: usize,
    pub motif_len: usize,
    pub characterizations: String,
    pub generations: usize,
    pub archive_dims: [usize; 2],
    pub sigma_iso: f64,
    pub sigma_line: f64,
    pub batch: usize,
    pub emitters: usize,
    pub top_fraction: f64,
    pub trim_fraction: f64,
    pub support_percentile: f64,
    pub tail_upper: f64,
    pub tail_center: f64,
    pub bounds_samples: usize,
    pub bounds_q_lo: f64,
    pub bounds_q_hi: f64,
    pub bounds_padding: f64,
    pub dirichlet_alpha: f64,
    pub qd_offset: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let emitter = EmitterConfig::default();
        let fitness = FitnessConfig::default();
        let bounds = BoundsConfig::default();
        let tail = TailQuantiles::default();
        ExperimentConfig {
            foreground: PathBuf::from("foreground.fa"),
            background: None,
            output: PathBuf::from("runs"),
            seed: 0,
            n_subsets: 5,
            motif_len: DEFAULT_MOTIF_LEN,
            characterizations: "all".into(),
            generations: 1000,
            archive_dims: DEFAULT_DIMS,
            sigma_iso: emitter.sigma_iso,
            sigma_line: emitter.sigma_line,
            batch: emitter.batch,
            emitters: emitter.emitters,
            top_fraction: fitness.top_fraction,
            trim_fraction: fitness.trim_fraction,
            support_percentile: 95.0,
            tail_upper: tail.upper,
            tail_center: tail.center,
            bounds_samples: bounds.n_samples,
            bounds_q_lo: bounds.q_lo,
            bounds_q_hi: bounds.q_hi,
            bounds_padding: bounds.padding,
            dirichlet_alpha: bounds.alpha,
            qd_offset: 0.0,
        }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub characterizations: Option<String>,
    pub generations: Option<usize>,
    pub n_subsets: Option<usize>,
}

pub fn parse_characterizations(spec: &str) -> Result<Vec<Characterization>> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(Characterization::ALL.to_vec());
    }
    let mut out: Vec<Characterization> = Vec::new();
    for part in spec.split(',').filter(|p| !p.trim().is_empty()) {
        let c: Characterization = part.parse().map_err(|_| {
            Error::Config(format!("field `characterizations`: unknown characterization `{}`", part.trim()))
        })?;
        if !out.contains(&c) {
            out.push(c);
        }
    }
    if out.is_empty() {
        return Err(Error::Config("field `characterizations`: empty".into()));
    }
    Ok(out)
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Load, make relative paths relative to the file, and validate.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = Self::from_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        cfg.rebase(base);
        Ok(cfg)
    }

    pub fn rebase(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.foreground);
        if let Some(b) = self.background.as_mut() {
            fix(b);
        }
        fix(&mut self.output);
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(p) = &o.output {
            self.output = p.clone();
        }
        if let Some(c) = &o.characterizations {
            self.characterizations = c.clone();
        }
        if let Some(g) = o.generations {
            self.generations = g;
        }
        if let Some(n) = o.n_subsets {
            self.n_subsets = n;
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn characterization_list(&self) -> Result<Vec<Characterization>> {
        parse_characterizations(&self.characterizations)
    }

    pub fn fitness_config(&self) -> FitnessConfig {
        FitnessConfig {
            top_fraction: self.top_fraction,
            trim_fraction: self.trim_fraction,
        }
    }

    pub fn tail_quantiles(&self) -> TailQuantiles {
        TailQuantiles {
            upper: self.tail_upper,
            center: self.tail_center,
        }
    }

    pub fn bounds_config(&self) -> BoundsConfig {
        BoundsConfig {
            n_samples: self.bounds_samples,
            q_lo: self.bounds_q_lo,
            q_hi: self.bounds_q_hi,
            padding: self.bounds_padding,
            alpha: self.dirichlet_alpha,
        }
    }

    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            generations: self.generations,
            motif_len: self.motif_len,
            alpha: self.dirichlet_alpha,
            dims: self.archive_dims,
            emitter: EmitterConfig {
                sigma_iso: self.sigma_iso,
                sigma_line: self.sigma_line,
                batch: self.batch,
                emitters: self.emitters,
            },
            qd_offset: self.qd_offset,
        }
    }

    /// Field-level checks; each error names the offending key.
    pub fn validate(&self) -> Result<()> {
        if self.n_subsets == 0 {
            return Err(Error::Config("field `n_subsets`: must be at least 1".into()));
        }
        if self.archive_dims.contains(&0) {
            return Err(Error::Config("field `archive_dims`: cell counts must be positive".into()));
        }
        if !(self.support_percentile > 0.0 && self.support_percentile < 100.0) {
            return Err(Error::Config("field `support_percentile`: must be in (0, 100)".into()));
        }
        for (name, v) in [("tail_upper", self.tail_upper), ("tail_center", self.tail_center)] {
            if !(0.0..=100.0).contains(&v) {
                return Err(Error::Config(format!("field `{name}`: must be in [0, 100]")));
            }
        }
        self.characterization_list()?;
        self.fitness_config().validate().map_err(as_config_error)?;
        self.bounds_config().validate().map_err(as_config_error)?;
        self.run_config().validate().map_err(as_config_error)
    }
}

fn as_config_error(e: Error) -> Error {
    match e {
        Error::InvalidParams { field, reason } => {
            let key = match field.as_str() {
                "n_samples" => "bounds_samples",
                "quantiles" => "bounds_q_lo/bounds_q_hi",
                "padding" => "bounds_padding",
                "alpha" => "dirichlet_alpha",
                other => other,
            };
            Error::Config(format!("field `{key}`: {reason}"))
        }
        other => other,
    }
}

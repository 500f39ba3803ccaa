//! Archive serialization, heatmap grids, text logos and method comparison
//! tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motif::{BehaviorDescriptor, Characterization, Pwm};
use crate::qd::{Archive, DescriptorBounds, Elite};
use crate::seq::decode_base;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotElite {
    pub cell: [usize; 2],
    pub fitness: f64,
    pub descriptor: [f64; 2],
    pub generation_added: usize,
    pub pwm: Pwm,
}

/// Full-fidelity, serializable view of an archive. Elites are listed in
/// fill order, so a reloaded archive samples parents identically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArchiveSnapshot {
    pub characterization: Characterization,
    pub axes: [String; 2],
    pub bounds: DescriptorBounds,
    pub dims: [usize; 2],
    pub elites: Vec<SnapshotElite>,
}

impl ArchiveSnapshot {
    pub fn from_archive(archive: &Archive) -> Self {
        let ch = archive.characterization();
        ArchiveSnapshot {
            characterization: ch,
            axes: ch.axis_names().map(String::from),
            bounds: *archive.bounds(),
            dims: archive.dims(),
            elites: archive
                .filled()
                .map(|((i, j), e)| SnapshotElite {
                    cell: [i, j],
                    fitness: e.fitness,
                    descriptor: e.descriptor.values,
                    generation_added: e.generation_added,
                    pwm: e.pwm.clone(),
                })
                .collect(),
        }
    }

    pub fn to_archive(&self) -> Result<Archive> {
        let cells = self
            .elites
            .iter()
            .map(|s| {
                (
                    (s.cell[0], s.cell[1]),
                    Elite {
                        pwm: s.pwm.clone(),
                        fitness: s.fitness,
                        descriptor: BehaviorDescriptor {
                            characterization: self.characterization,
                            values: s.descriptor,
                        },
                        generation_added: s.generation_added,
                    },
                )
            })
            .collect();
        Archive::from_cells(self.characterization, self.bounds, self.dims, cells)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Csv,
}

pub fn export_archive(archive: &Archive, format: ExportFormat) -> Result<String> {
    let snap = ArchiveSnapshot::from_archive(archive);
    match format {
        ExportFormat::Json => Ok(serde_json::to_string_pretty(&snap)? + "\n"),
        ExportFormat::Csv => Ok(snapshot_csv(&snap)),
    }
}

pub fn load_archive_json(text: &str) -> Result<Archive> {
    serde_json::from_str::<ArchiveSnapshot>(text)?.to_archive()
}

fn snapshot_csv(snap: &ArchiveSnapshot) -> String {
    let width = snap.elites.iter().map(|e| e.pwm.len()).max().unwrap_or(0);
    let mut out = format!("i,j,fitness,{},{},generation_added,consensus", snap.axes[0], snap.axes[1]);
    for p in 0..width {
        for b in "ACGT".chars() {
            let _ = write!(out, ",p{p}_{b}");
        }
    }
    out.push('\n');
    for e in &snap.elites {
        let _ = write!(
            out,
            "{},{},{},{},{},{},{}",
            e.cell[0],
            e.cell[1],
            e.fitness,
            e.descriptor[0],
            e.descriptor[1],
            e.generation_added,
            consensus(&e.pwm)
        );
        for x in e.pwm.flatten() {
            let _ = write!(out, ",{x}");
        }
        out.push('\n');
    }
    out
}

/// `dims[0] × dims[1]` grid of elite fitness; `None` marks an empty cell.
pub fn heatmap_grid(archive: &Archive) -> Vec<Vec<Option<f64>>> {
    let [rows, cols] = archive.dims();
    let mut grid = vec![vec![None; cols]; rows];
    for ((i, j), e) in archive.elites() {
        grid[i][j] = Some(e.fitness);
    }
    grid
}

/// Grid rows are bins of the first descriptor; empty cells are blank.
pub fn heatmap_csv(grid: &[Vec<Option<f64>>]) -> String {
    let mut out = String::new();
    for row in grid {
        let line: Vec<String> = row.iter().map(|c| c.map(|f| f.to_string()).unwrap_or_default()).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Argmax letter per position, lowercase when the top probability is below
/// one half. Ties go to the earlier letter in `ACGT`.
pub fn consensus(pwm: &Pwm) -> String {
    pwm.rows()
        .iter()
        .map(|r| {
            let mut best = 0;
            for b in 1..4 {
                if r[b] > r[best] {
                    best = b;
                }
            }
            let c = decode_base(best as u8);
            if r[best] >= 0.5 {
                c
            } else {
                c.to_ascii_lowercase()
            }
        })
        .collect()
}

/// Per-position probability table, one row per motif position.
pub fn logo_csv(pwm: &Pwm) -> String {
    let mut out = String::from("position,A,C,G,T\n");
    for (j, r) in pwm.rows().iter().enumerate() {
        let _ = writeln!(out, "{},{},{},{},{}", j + 1, r[0], r[1], r[2], r[3]);
    }
    out
}

/// Fitness values attributed to one method.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodFitness {
    pub method: String,
    pub values: Vec<f64>,
    /// Overrides the max column, e.g. the best single motif when `values`
    /// holds per-subset averages.
    pub peak: Option<f64>,
}

impl MethodFitness {
    pub fn new(method: impl Into<String>, values: Vec<f64>) -> Self {
        MethodFitness {
            method: method.into(),
            values,
            peak: None,
        }
    }

    pub fn with_peak(mut self, peak: f64) -> Self {
        self.peak = Some(peak);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub max: f64,
    pub mean: f64,
    /// Sample standard deviation (`n − 1`); zero for a single value.
    pub std: f64,
    pub n: usize,
}

pub fn summarize(values: &[f64]) -> Option<Summary> {
    if values.is_empty() {
        return None;
    }
    let n = values.len();
    let mean = values.iter().sum::<f64>() / n as f64;
    let std = if n > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Some(Summary { max, mean, std, n })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub rows: Vec<(String, Summary)>,
}

pub fn comparison_table(entries: &[MethodFitness]) -> Result<ComparisonTable> {
    let rows = entries
        .iter()
        .map(|e| {
            let mut s = summarize(&e.values)
                .ok_or_else(|| Error::invalid("values", format!("method `{}` has no fitness values", e.method)))?;
            if let Some(p) = e.peak {
                s.max = p;
            }
            Ok((e.method.clone(), s))
        })
        .collect::<Result<_>>()?;
    Ok(ComparisonTable { rows })
}

impl ComparisonTable {
    pub fn to_text(&self) -> String {
        let width = self.rows.iter().map(|(m, _)| m.len()).max().unwrap_or(0).max("Method".len());
        let mut out = format!("{:<width$}  {:>11}  {:>26}\n", "Method", "Max Fitness", "Avg Fitness (mean ± std)");
        for (m, s) in &self.rows {
            let avg = format!("{:.3} ± {:.3}", s.mean, s.std);
            let _ = writeln!(out, "{m:<width$}  {:>11.3}  {avg:>26}", s.max);
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,max_fitness,mean_fitness,std_fitness,n\n");
        for (m, s) in &self.rows {
            let _ = writeln!(out, "{m},{},{},{},{}", s.max, s.mean, s.std, s.n);
        }
        out
    }
}

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::qd::Archive;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    /// 1-based; generation 1 is the first emitted batch.
    pub generation: usize,
    pub coverage: f64,
    pub best_fitness: Option<f64>,
    pub qd_score: f64,
    /// Candidates discarded this generation because evaluation failed.
    pub failed_evaluations: usize,
}

impl GenerationRecord {
    pub fn snapshot(generation: usize, archive: &Archive, qd_offset: f64, failed_evaluations: usize) -> Self {
        GenerationRecord {
            generation,
            coverage: archive.coverage(),
            best_fitness: archive.best_fitness(),
            qd_score: archive.qd_score(qd_offset),
            failed_evaluations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RunMetrics {
    pub qd_offset: f64,
    pub records: Vec<GenerationRecord>,
}

impl RunMetrics {
    pub fn new(qd_offset: f64) -> Self {
        RunMetrics {
            qd_offset,
            records: Vec::new(),
        }
    }

    pub fn last(&self) -> Option<&GenerationRecord> {
        self.records.last()
    }

    pub fn total_failed(&self) -> usize {
        self.records.iter().map(|r| r.failed_evaluations).sum()
    }

    /// CSV trace; the first line is a `# qd_offset=<value>` comment.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# qd_offset={}\n", self.qd_offset);
        out.push_str("generation,coverage,best_fitness,qd_score,failed_evaluations\n");
        for r in &self.records {
            let best = r.best_fitness.map(|b| b.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                r.generation, r.coverage, best, r.qd_score, r.failed_evaluations
            );
        }
        out
    }
}

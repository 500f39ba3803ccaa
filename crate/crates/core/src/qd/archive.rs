use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motif::{BehaviorDescriptor, Characterization, Pwm};

pub const DEFAULT_DIMS: [usize; 2] = [20, 20];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DescriptorBounds {
    pub lo: [f64; 2],
    pub hi: [f64; 2],
}

impl DescriptorBounds {
    pub fn new(lo: [f64; 2], hi: [f64; 2]) -> Result<Self> {
        for d in 0..2 {
            if !(lo[d].is_finite() && hi[d].is_finite() && lo[d] < hi[d]) {
                return Err(Error::invalid("bounds", format!("dimension {d}: need lo < hi, got [{}, {}]", lo[d], hi[d])));
            }
        }
        Ok(DescriptorBounds { lo, hi })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Elite {
    pub pwm: Pwm,
    pub fitness: f64,
    pub descriptor: BehaviorDescriptor,
    pub generation_added: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertOutcome {
    NewCell,
    Improved,
    Rejected,
}

/// Grid archive: one elite per cell, local competition on fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct Archive {
    characterization: Characterization,
    dims: [usize; 2],
    bounds: DescriptorBounds,
    cells: Vec<Option<Elite>>,
    // flat cell indices in first-filled order; drives uniform parent sampling
    occupied: Vec<usize>,
}

impl Archive {
    pub fn new(characterization: Characterization, bounds: DescriptorBounds, dims: [usize; 2]) -> Result<Self> {
        if dims[0] == 0 || dims[1] == 0 {
            return Err(Error::invalid("archive_dims", "cell counts must be positive"));
        }
        Ok(Archive {
            characterization,
            dims,
            bounds,
            cells: vec![None; dims[0] * dims[1]],
            occupied: Vec::new(),
        })
    }

    pub fn characterization(&self) -> Characterization {
        self.characterization
    }

    pub fn dims(&self) -> [usize; 2] {
        self.dims
    }

    pub fn bounds(&self) -> &DescriptorBounds {
        &self.bounds
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    /// Uniform binning per dimension; out-of-range values clip to the edge cell.
    pub fn cell_index(&self, values: &[f64; 2]) -> Result<(usize, usize)> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteDescriptor(*values));
        }
        let bin = |d: usize| {
            let (lo, hi) = (self.bounds.lo[d], self.bounds.hi[d]);
            let x = ((values[d] - lo) / (hi - lo) * self.dims[d] as f64).floor();
            x.clamp(0.0, (self.dims[d] - 1) as f64) as usize
        };
        Ok((bin(0), bin(1)))
    }

    fn flat(&self, (i, j): (usize, usize)) -> usize {
        i * self.dims[1] + j
    }

    pub fn get(&self, cell: (usize, usize)) -> Option<&Elite> {
        if cell.0 >= self.dims[0] || cell.1 >= self.dims[1] {
            return None;
        }
        self.cells[self.flat(cell)].as_ref()
    }

    /// Place `candidate` in its cell if the cell is empty or the incumbent is
    /// strictly worse. Ties keep the incumbent.
    pub fn try_insert(&mut self, candidate: Elite) -> Result<InsertOutcome> {
        if !candidate.fitness.is_finite() {
            return Err(Error::invalid("fitness", "must be finite"));
        }
        let idx = self.flat(self.cell_index(&candidate.descriptor.values)?);
        match &self.cells[idx] {
            None => {
                self.cells[idx] = Some(candidate);
                self.occupied.push(idx);
                Ok(InsertOutcome::NewCell)
            }
            Some(inc) if candidate.fitness > inc.fitness => {
                self.cells[idx] = Some(candidate);
                Ok(InsertOutcome::Improved)
            }
            Some(_) => Ok(InsertOutcome::Rejected),
        }
    }

    pub fn len(&self) -> usize {
        self.occupied.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occupied.is_empty()
    }

    pub fn coverage(&self) -> f64 {
        self.occupied.len() as f64 / self.cells.len() as f64
    }

    /// Occupied cells in row-major order.
    pub fn elites(&self) -> impl Iterator<Item = ((usize, usize), &Elite)> + '_ {
        let w = self.dims[1];
        self.cells
            .iter()
            .enumerate()
            .filter_map(move |(k, c)| c.as_ref().map(|e| ((k / w, k % w), e)))
    }

    /// Occupied cells in the order they were first filled.
    pub fn filled(&self) -> impl Iterator<Item = ((usize, usize), &Elite)> + '_ {
        let w = self.dims[1];
        self.occupied
            .iter()
            .map(move |&k| ((k / w, k % w), self.cells[k].as_ref().expect("occupied cell")))
    }

    /// The `k`-th occupied cell in fill order.
    pub(crate) fn nth_filled(&self, k: usize) -> &Elite {
        self.cells[self.occupied[k]].as_ref().expect("occupied cell")
    }

    pub fn best(&self) -> Option<&Elite> {
        self.elites()
            .map(|(_, e)| e)
            .fold(None, |acc: Option<&Elite>, e| match acc {
                Some(b) if b.fitness >= e.fitness => Some(b),
                _ => Some(e),
            })
    }

    pub fn best_fitness(&self) -> Option<f64> {
        self.best().map(|e| e.fitness)
    }

    /// Sum of `fitness − offset` over occupied cells.
    pub fn qd_score(&self, offset: f64) -> f64 {
        self.elites().map(|(_, e)| e.fitness - offset).sum()
    }

    pub fn mean_fitness(&self) -> Option<f64> {
        (!self.is_empty()).then(|| self.elites().map(|(_, e)| e.fitness).sum::<f64>() / self.len() as f64)
    }

    /// Rebuild from stored cells, checking that each elite sits in the cell
    /// its descriptor maps to. The given order becomes the fill order.
    pub fn from_cells(
        characterization: Characterization,
        bounds: DescriptorBounds,
        dims: [usize; 2],
        cells: Vec<((usize, usize), Elite)>,
    ) -> Result<Self> {
        let mut archive = Archive::new(characterization, bounds, dims)?;
        for (cell, elite) in cells {
            if cell.0 >= dims[0] || cell.1 >= dims[1] {
                return Err(Error::invalid("cell", format!("{cell:?} outside {dims:?}")));
            }
            if archive.cell_index(&elite.descriptor.values)? != cell {
                return Err(Error::invalid("cell", format!("descriptor does not map to {cell:?}")));
            }
            let idx = archive.flat(cell);
            if archive.cells[idx].is_some() {
                return Err(Error::invalid("cell", format!("{cell:?} listed twice")));
            }
            archive.cells[idx] = Some(elite);
            archive.occupied.push(idx);
        }
        Ok(archive)
    }
}

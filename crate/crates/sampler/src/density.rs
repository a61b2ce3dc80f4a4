use hexatile_lattice::{tiling_from_paths, Alpha, Face, HexagonSpec, LozengeType, PathSystem};

use crate::SamplerError;

/// Per-face counts of each lozenge type over a batch of samples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityGrid {
    n: usize,
    alpha: Alpha,
    faces: Vec<Face>,
    counts: Vec<[u64; 3]>,
    total: u64,
}

/// Frequencies at one face with binomial standard errors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FaceFrequency {
    pub face: Face,
    pub p: [f64; 3],
    pub se: [f64; 3],
}

impl DensityGrid {
    pub fn new(n: usize, alpha: Alpha) -> Self {
        let faces = HexagonSpec::faces(n);
        let counts = vec![[0; 3]; faces.len()];
        Self { n, alpha, faces, counts, total: 0 }
    }

    /// Grid of a batch that must share `n` (α is supplied by the caller
    /// since path systems do not carry it).
    pub fn from_samples(n: usize, alpha: Alpha, samples: &[PathSystem]) -> Result<Self, SamplerError> {
        let mut grid = Self::new(n, alpha);
        for s in samples {
            grid.add(s)?;
        }
        Ok(grid)
    }

    pub fn add(&mut self, sample: &PathSystem) -> Result<(), SamplerError> {
        if sample.n() != self.n {
            return Err(SamplerError::MixedBatch);
        }
        let map = tiling_from_paths(sample);
        for (face, c) in self.faces.iter().zip(self.counts.iter_mut()) {
            let t = map.get(*face).expect("faces come from the same hexagon");
            c[t.index()] += 1;
        }
        self.total += 1;
        Ok(())
    }

    /// Adds the counts of another grid with the same parameters.
    pub fn merge(&mut self, other: &DensityGrid) -> Result<(), SamplerError> {
        if other.n != self.n || other.alpha != self.alpha {
            return Err(SamplerError::MixedBatch);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            for t in 0..3 {
                a[t] += b[t];
            }
        }
        self.total += other.total;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn counts(&self, face: Face) -> Option<[u64; 3]> {
        self.faces.iter().position(|f| *f == face).map(|i| self.counts[i])
    }

    fn frequency_at(&self, i: usize) -> FaceFrequency {
        let total = self.total.max(1) as f64;
        let p = self.counts[i].map(|c| c as f64 / total);
        let se = p.map(|q| (q * (1.0 - q) / total).sqrt());
        FaceFrequency { face: self.faces[i], p, se }
    }

    pub fn frequency(&self, face: Face) -> Option<FaceFrequency> {
        self.faces.iter().position(|f| *f == face).map(|i| self.frequency_at(i))
    }

    pub fn frequencies(&self) -> Vec<FaceFrequency> {
        (0..self.faces.len()).map(|i| self.frequency_at(i)).collect()
    }

    /// Most frequent type at a face.
    pub fn majority(&self, face: Face) -> Option<LozengeType> {
        let c = self.counts(face)?;
        let best = (0..3).max_by_key(|&t| c[t])?;
        Some(LozengeType::ALL[best])
    }
}

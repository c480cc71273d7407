use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::{Error, Result};

/// Amplitudes with squared modulus below this are treated as zero.
const DUST: f64 = 1e-32;

/// A row vector over the basis-state space, stored sparsely.
///
/// Entries are kept sorted by basis index with no explicit zeros. Most states
/// produced by the constructions in this crate are (phased) basis vectors, so
/// the sparse layout keeps ensemble simulation linear in the support size.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    dim: usize,
    entries: Vec<(usize, C64)>,
}

impl StateVector {
    /// From a dense amplitude list.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidDimension("empty state vector".into()));
        }
        let dim = amplitudes.len();
        let entries = amplitudes
            .into_iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > DUST)
            .collect();
        Ok(Self { dim, entries })
    }

    /// The basis vector `e_index` (0-based).
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::InvalidIndex { index, dim });
        }
        Ok(Self {
            dim,
            entries: vec![(index, C64::new(1.0, 0.0))],
        })
    }

    /// From `(index, amplitude)` pairs in any order; repeated indices are summed.
    pub fn from_entries(dim: usize, entries: Vec<(usize, C64)>) -> Result<Self> {
        if let Some(&(index, _)) = entries.iter().find(|(i, _)| *i >= dim) {
            return Err(Error::InvalidIndex { index, dim });
        }
        Ok(Self::accumulate(dim, entries))
    }

    pub(crate) fn accumulate(dim: usize, mut entries: Vec<(usize, C64)>) -> Self {
        entries.sort_unstable_by_key(|&(i, _)| i);
        let mut merged: Vec<(usize, C64)> = Vec::with_capacity(entries.len());
        for (i, a) in entries {
            match merged.last_mut() {
                Some((j, b)) if *j == i => *b += a,
                _ => merged.push((i, a)),
            }
        }
        merged.retain(|(_, a)| a.norm_sqr() > DUST);
        Self {
            dim,
            entries: merged,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero `(index, amplitude)` pairs sorted by index.
    pub fn entries(&self) -> &[(usize, C64)] {
        &self.entries
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.entries
            .binary_search_by_key(&index, |&(i, _)| i)
            .map_or(C64::new(0.0, 0.0), |pos| self.entries[pos].1)
    }

    pub fn to_dense(&self) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for &(i, a) in &self.entries {
            out[i] = a;
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// `<self, other> = Σ conj(self_i) other_i`.
    pub fn inner(&self, other: &Self) -> C64 {
        let (mut i, mut j) = (0, 0);
        let mut acc = C64::new(0.0, 0.0);
        while i < self.entries.len() && j < other.entries.len() {
            let (a, x) = self.entries[i];
            let (b, y) = other.entries[j];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += x.conj() * y;
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&(i, a)| (i, a * s)).collect(),
        }
    }

    /// `φ ⊗ ψ = (φ_1 ψ, ..., φ_n ψ)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len() * other.entries.len());
        for &(i, a) in &self.entries {
            for &(j, b) in &other.entries {
                entries.push((i * other.dim + j, a * b));
            }
        }
        Self {
            dim: self.dim * other.dim,
            entries,
        }
    }

    /// Right multiplication `self · m`.
    pub fn mul_matrix(&self, m: &ComplexMatrix) -> Result<Self> {
        if m.rows() != self.dim {
            return Err(Error::InvalidDimension(format!(
                "state of dim {} times {}x{} matrix",
                self.dim,
                m.rows(),
                m.cols()
            )));
        }
        let mut out = vec![C64::new(0.0, 0.0); m.cols()];
        for &(r, a) in &self.entries {
            for (o, &x) in out.iter_mut().zip(m.row(r)) {
                *o += a * x;
            }
        }
        Ok(Self::accumulate(
            m.cols(),
            out.into_iter().enumerate().collect(),
        ))
    }

    /// Index of the first entry whose modulus is within a relative 1e-6 of
    /// the largest one. States equal up to global phase share this key.
    pub(crate) fn phase_key(&self) -> Option<usize> {
        let max = self
            .entries
            .iter()
            .map(|(_, a)| a.norm_sqr())
            .fold(0.0, f64::max);
        self.entries
            .iter()
            .find(|(_, a)| a.norm_sqr() >= max * (1.0 - 1e-6))
            .map(|&(i, _)| i)
    }
}

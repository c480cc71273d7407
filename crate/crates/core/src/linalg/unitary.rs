use num_complex::Complex64 as C64;

use super::{is_unitary, tensor, ComplexMatrix, StateVector};
use crate::{Error, Result};

/// A unitary written as a direct sum of dense blocks on disjoint index sets,
/// acting as the identity on every basis state outside the blocks.
///
/// A general dense unitary is a single block covering every index.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary {
    dim: usize,
    blocks: Vec<Block>,
    /// `slot[i] = (block, position)` for indices covered by a block.
    slot: Vec<Option<(usize, usize)>>,
}

#[derive(Clone, Debug, PartialEq)]
struct Block {
    indices: Vec<usize>,
    matrix: ComplexMatrix,
}

impl Unitary {
    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            blocks: Vec::new(),
            slot: vec![None; dim],
        }
    }

    /// A dense square matrix acting on the whole space. Unitarity is checked
    /// separately, see [`Unitary::is_unitary`].
    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() || m.rows() == 0 {
            return Err(Error::InvalidDimension(format!(
                "unitary must be square and nonempty, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let dim = m.rows();
        Self::from_blocks(dim, vec![((0..dim).collect(), m)])
    }

    /// Block `(indices, matrix)` maps basis state `indices[p]` to
    /// `Σ_q matrix[p][q] e_{indices[q]}`.
    pub fn from_blocks(dim: usize, blocks: Vec<(Vec<usize>, ComplexMatrix)>) -> Result<Self> {
        let mut slot = vec![None; dim];
        let mut out = Vec::with_capacity(blocks.len());
        for (b, (indices, matrix)) in blocks.into_iter().enumerate() {
            if !matrix.is_square() || matrix.rows() != indices.len() {
                return Err(Error::InvalidDimension(format!(
                    "block of {} indices with a {}x{} matrix",
                    indices.len(),
                    matrix.rows(),
                    matrix.cols()
                )));
            }
            for (p, &i) in indices.iter().enumerate() {
                if i >= dim {
                    return Err(Error::InvalidIndex { index: i, dim });
                }
                if slot[i].replace((b, p)).is_some() {
                    return Err(Error::InvalidInput(format!(
                        "basis index {i} belongs to two blocks"
                    )));
                }
            }
            out.push(Block { indices, matrix });
        }
        Ok(Self {
            dim,
            blocks: out,
            slot,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_identity_map(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(self.dim);
        for block in &self.blocks {
            for (p, &r) in block.indices.iter().enumerate() {
                for (q, &c) in block.indices.iter().enumerate() {
                    m.set(r, c, block.matrix.get(p, q));
                }
            }
        }
        m
    }

    /// Checks each block; disjoint blocks plus identity give a unitary iff
    /// every block is one.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.blocks
            .iter()
            .all(|b| is_unitary(&b.matrix, tol).unwrap_or(false))
    }

    /// `ξ · U`.
    pub fn apply(&self, state: &StateVector) -> StateVector {
        debug_assert_eq!(state.dim(), self.dim);
        let mut acc = Vec::with_capacity(state.entries().len());
        for &(i, a) in state.entries() {
            match self.slot[i] {
                None => acc.push((i, a)),
                Some((b, p)) => {
                    let block = &self.blocks[b];
                    for (&target, &m) in block.indices.iter().zip(block.matrix.row(p)) {
                        if m != C64::new(0.0, 0.0) {
                            acc.push((target, a * m));
                        }
                    }
                }
            }
        }
        StateVector::accumulate(self.dim, acc)
    }

    /// Dense `U ⊗ V`.
    pub fn tensor(&self, other: &Self) -> Self {
        if self.is_identity_map() && other.is_identity_map() {
            return Self::identity(self.dim * other.dim);
        }
        Self::from_matrix(tensor(&self.to_matrix(), &other.to_matrix()))
            .expect("tensor of square matrices is square")
    }

    /// Reindexes into a larger space through `map[old] = new`, acting as the
    /// identity on indices outside the image.
    pub(crate) fn embed(&self, new_dim: usize, map: &[usize]) -> Self {
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                (
                    b.indices.iter().map(|&i| map[i]).collect(),
                    b.matrix.clone(),
                )
            })
            .collect();
        Self::from_blocks(new_dim, blocks).expect("injective map keeps blocks disjoint")
    }
}

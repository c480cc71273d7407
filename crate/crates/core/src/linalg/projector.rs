use std::collections::BTreeSet;

use num_complex::Complex64 as C64;

use super::{tensor, ComplexMatrix, StateVector};
use crate::{Error, Result};

/// An orthogonal projector: Hermitian and idempotent.
///
/// Projectors onto spans of basis states are kept as sorted index lists;
/// everything else is a dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Projector {
    dim: usize,
    kind: Kind,
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Diagonal(Vec<usize>),
    Dense(ComplexMatrix),
}

/// Projector onto the span of the basis states at `indices` (0-based).
pub fn projector_onto(dim: usize, indices: impl IntoIterator<Item = usize>) -> Result<Projector> {
    let set: BTreeSet<usize> = indices.into_iter().collect();
    if let Some(&index) = set.iter().find(|&&i| i >= dim) {
        return Err(Error::InvalidIndex { index, dim });
    }
    Ok(Projector {
        dim,
        kind: Kind::Diagonal(set.into_iter().collect()),
    })
}

impl Projector {
    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            kind: Kind::Diagonal((0..dim).collect()),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            kind: Kind::Diagonal(Vec::new()),
        }
    }

    /// Wraps a dense matrix after checking it is Hermitian and idempotent.
    pub fn from_matrix(m: ComplexMatrix, tol: f64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidDimension(format!(
                "projector must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if !m.is_hermitian(tol) {
            return Err(Error::InvalidInput("projector is not Hermitian".into()));
        }
        if !m.is_idempotent(tol) {
            return Err(Error::InvalidInput("projector is not idempotent".into()));
        }
        Ok(Self {
            dim: m.rows(),
            kind: Kind::Dense(m),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis indices spanned, when the projector is diagonal.
    pub fn diagonal_indices(&self) -> Option<&[usize]> {
        match &self.kind {
            Kind::Diagonal(ix) => Some(ix),
            Kind::Dense(_) => None,
        }
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        match &self.kind {
            Kind::Diagonal(ix) => {
                let mut m = ComplexMatrix::zeros(self.dim, self.dim);
                for &i in ix {
                    m.set(i, i, C64::new(1.0, 0.0));
                }
                m
            }
            Kind::Dense(m) => m.clone(),
        }
    }

    /// `ξ · P`.
    pub fn apply(&self, state: &StateVector) -> StateVector {
        debug_assert_eq!(state.dim(), self.dim);
        match &self.kind {
            Kind::Diagonal(ix) => StateVector::accumulate(
                self.dim,
                state
                    .entries()
                    .iter()
                    .filter(|(i, _)| ix.binary_search(i).is_ok())
                    .copied()
                    .collect(),
            ),
            Kind::Dense(m) => state.mul_matrix(m).expect("dimension checked"),
        }
    }

    /// `‖ξ · P‖²`.
    pub fn weight(&self, state: &StateVector) -> f64 {
        match &self.kind {
            Kind::Diagonal(ix) => state
                .entries()
                .iter()
                .filter(|(i, _)| ix.binary_search(i).is_ok())
                .map(|(_, a)| a.norm_sqr())
                .sum(),
            Kind::Dense(_) => self.apply(state).norm_sqr(),
        }
    }

    /// `I - P`.
    pub fn complement(&self) -> Self {
        let kind = match &self.kind {
            Kind::Diagonal(ix) => Kind::Diagonal(
                (0..self.dim)
                    .filter(|i| ix.binary_search(i).is_err())
                    .collect(),
            ),
            Kind::Dense(m) => Kind::Dense(
                ComplexMatrix::identity(self.dim)
                    .sub(m)
                    .expect("same shape"),
            ),
        };
        Self {
            dim: self.dim,
            kind,
        }
    }

    /// `P ⊗ Q`, diagonal whenever both factors are.
    pub fn tensor(&self, other: &Self) -> Self {
        let dim = self.dim * other.dim;
        let kind = match (&self.kind, &other.kind) {
            (Kind::Diagonal(a), Kind::Diagonal(b)) => Kind::Diagonal(
                a.iter()
                    .flat_map(|&i| b.iter().map(move |&j| i * other.dim + j))
                    .collect(),
            ),
            _ => Kind::Dense(tensor(&self.to_matrix(), &other.to_matrix())),
        };
        Self { dim, kind }
    }

    /// Reindexes into a larger space through `map[old] = new`; new states
    /// are outside the range.
    pub(crate) fn embed(&self, new_dim: usize, map: &[usize]) -> Self {
        let kind = match &self.kind {
            Kind::Diagonal(ix) => {
                let mut v: Vec<usize> = ix.iter().map(|&i| map[i]).collect();
                v.sort_unstable();
                Kind::Diagonal(v)
            }
            Kind::Dense(m) => {
                let mut out = ComplexMatrix::zeros(new_dim, new_dim);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        out.set(map[r], map[c], m.get(r, c));
                    }
                }
                Kind::Dense(out)
            }
        };
        Self { dim: new_dim, kind }
    }
}

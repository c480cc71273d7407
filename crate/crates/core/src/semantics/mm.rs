use std::collections::BTreeSet;

use crate::linalg::{is_unitary, projector_onto, ComplexMatrix, Projector, StateVector};
use crate::{tol, Error, Result};

/// A unary measure-many QFA: after every step the state is measured against
/// accepting / rejecting / go subspaces and halts on a halting outcome.
#[derive(Clone, Debug)]
pub struct MmQfa {
    initial: StateVector,
    sigma: ComplexMatrix,
    end: ComplexMatrix,
    accept: Projector,
    go: Projector,
}

impl MmQfa {
    pub fn new(
        initial: StateVector,
        sigma: ComplexMatrix,
        end: ComplexMatrix,
        accepting: &BTreeSet<usize>,
        rejecting: &BTreeSet<usize>,
    ) -> Result<Self> {
        let dim = initial.dim();
        if let Some(q) = accepting.intersection(rejecting).next() {
            return Err(Error::InvalidInput(format!(
                "state {q} is both accepting and rejecting"
            )));
        }
        for m in [&sigma, &end] {
            if m.rows() != dim || !is_unitary(m, tol::STRUCTURAL)? {
                return Err(Error::InvalidInput(format!(
                    "evolution must be a {dim}x{dim} unitary"
                )));
            }
        }
        let go = (0..dim).filter(|q| !accepting.contains(q) && !rejecting.contains(q));
        Ok(Self {
            accept: projector_onto(dim, accepting.iter().copied())?,
            go: projector_onto(dim, go)?,
            initial,
            sigma,
            end,
        })
    }

    /// `Σ_{j=1}^{k+1} ‖π₀ (Π_{i<j} U_i P_go) U_j P_acc‖²`, with `U_{k+1}` the endmarker.
    pub fn accept_probability(&self, k: usize) -> f64 {
        let mut live = self.initial.clone();
        let mut total = 0.0;
        for step in 0..=k {
            let u = if step < k { &self.sigma } else { &self.end };
            let evolved = live.mul_matrix(u).expect("dimension checked");
            total += self.accept.weight(&evolved);
            live = self.go.apply(&evolved);
        }
        total
    }
}

/// Free-function form of [`MmQfa::accept_probability`].
pub fn mm_accept_probability(
    q_acc: &BTreeSet<usize>,
    q_rej: &BTreeSet<usize>,
    sigma: &ComplexMatrix,
    end: &ComplexMatrix,
    pi0: &StateVector,
    k: usize,
) -> Result<f64> {
    let a = MmQfa::new(pi0.clone(), sigma.clone(), end.clone(), q_acc, q_rej)?;
    Ok(a.accept_probability(k))
}

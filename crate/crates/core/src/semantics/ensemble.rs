use std::collections::HashMap;

use super::Observable;
use crate::linalg::{Projector, StateVector, Unitary};
use crate::{tol, Error, Result};

/// One evolution-then-measurement step: `ξ ↦ ξ·U`, then measure the observable.
#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    unitary: Unitary,
    observable: Observable,
}

impl Stage {
    pub fn new(unitary: Unitary, observable: Observable) -> Result<Self> {
        if unitary.dim() != observable.dim() {
            return Err(Error::InvalidDimension(format!(
                "stage unitary has dimension {} but observable has {}",
                unitary.dim(),
                observable.dim()
            )));
        }
        if !unitary.is_unitary(tol::STRUCTURAL) {
            return Err(Error::InvalidInput("stage matrix is not unitary".into()));
        }
        Ok(Self {
            unitary,
            observable,
        })
    }

    /// Construction paths that are unitary by design skip the O(d³) check.
    pub(crate) fn new_unchecked(unitary: Unitary, observable: Observable) -> Self {
        debug_assert_eq!(unitary.dim(), observable.dim());
        Self {
            unitary,
            observable,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::new_unchecked(Unitary::identity(dim), Observable::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.unitary.dim()
    }

    pub fn unitary(&self) -> &Unitary {
        &self.unitary
    }

    pub fn observable(&self) -> &Observable {
        &self.observable
    }

    pub(crate) fn tensor(&self, other: &Self) -> Self {
        Self::new_unchecked(
            self.unitary.tensor(&other.unitary),
            self.observable.tensor(&other.observable),
        )
    }
}

/// A mixed state as a weighted ensemble of normalized pure states.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedState {
    dim: usize,
    members: Vec<(f64, StateVector)>,
}

impl MixedState {
    pub fn pure(state: StateVector) -> Result<Self> {
        Self::new(vec![(1.0, state)])
    }

    pub fn new(members: Vec<(f64, StateVector)>) -> Result<Self> {
        let dim = match members.first() {
            Some((_, s)) => s.dim(),
            None => return Err(Error::InvalidInput("empty ensemble".into())),
        };
        for (w, s) in &members {
            if s.dim() != dim {
                return Err(Error::InvalidDimension(
                    "ensemble members differ in dimension".into(),
                ));
            }
            if *w < 0.0 {
                return Err(Error::InvalidInput(format!("negative ensemble weight {w}")));
            }
            if !s.is_normalized(tol::STRUCTURAL) {
                return Err(Error::InvalidInput(
                    "ensemble member is not normalized".into(),
                ));
            }
        }
        let total: f64 = members.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > tol::PROBABILITY {
            return Err(Error::InvalidInput(format!(
                "ensemble weights sum to {total}"
            )));
        }
        Ok(Self { dim, members })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn members(&self) -> &[(f64, StateVector)] {
        &self.members
    }

    pub fn total_weight(&self) -> f64 {
        self.members.iter().map(|(w, _)| w).sum()
    }

    /// `Σ_i w_i ‖ξ_i P‖²`.
    pub fn expectation(&self, p: &Projector) -> f64 {
        self.members.iter().map(|(w, s)| w * p.weight(s)).sum()
    }

    /// Applies the unitary of `stage` and, when `measure` is set, its observable.
    pub(crate) fn evolve(&self, stage: &Stage, measure: bool) -> Self {
        let mut merged = Merger::default();
        for (w, s) in &self.members {
            let evolved = stage.unitary.apply(s);
            if !measure {
                merged.push(*w, evolved);
                continue;
            }
            for (p, branch) in stage.observable.measure(&evolved) {
                if p > tol::PRUNE {
                    merged.push(w * p, branch.scale(1.0 / p.sqrt()));
                }
            }
        }
        Self {
            dim: self.dim,
            members: merged.members,
        }
    }
}

/// Accumulates ensemble members, summing the weights of states that agree
/// up to a global phase.
#[derive(Default)]
struct Merger {
    members: Vec<(f64, StateVector)>,
    buckets: HashMap<usize, Vec<usize>>,
}

impl Merger {
    fn push(&mut self, w: f64, state: StateVector) {
        let Some(key) = state.phase_key() else {
            return;
        };
        let bucket = self.buckets.entry(key).or_default();
        for &m in bucket.iter() {
            let (mw, ms) = &mut self.members[m];
            if ms.inner(&state).norm() >= 1.0 - tol::MERGE {
                *mw += w;
                return;
            }
        }
        bucket.push(self.members.len());
        self.members.push((w, state));
    }
}

/// Applies one stage to every ensemble member, branching over outcomes.
pub fn apply_stage(m: &MixedState, s: &Stage) -> Result<MixedState> {
    if m.dim() != s.dim() {
        return Err(Error::InvalidDimension(format!(
            "ensemble of dimension {} through a stage of dimension {}",
            m.dim(),
            s.dim()
        )));
    }
    Ok(m.evolve(s, true))
}

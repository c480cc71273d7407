use std::collections::BTreeMap;

use rand::Rng;

use crate::linalg::{random_unitary, ComplexMatrix, Projector, StateVector, C64};
use crate::{tol, Error, Result};

/// A projective measurement: labelled projectors that are pairwise
/// orthogonal and sum to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    dim: usize,
    outcomes: Vec<(String, Projector)>,
    /// For all-diagonal observables, `owner[i]` is the outcome containing basis state `i`.
    owner: Option<Vec<u32>>,
}

impl Observable {
    pub fn new(outcomes: Vec<(String, Projector)>) -> Result<Self> {
        let dim = match outcomes.first() {
            Some((_, p)) => p.dim(),
            None => return Err(Error::InvalidInput("observable with no outcomes".into())),
        };
        if outcomes.iter().any(|(_, p)| p.dim() != dim) {
            return Err(Error::InvalidDimension(
                "observable projectors differ in dimension".into(),
            ));
        }
        if let Some(owner) = diagonal_owner(dim, &outcomes)? {
            return Ok(Self {
                dim,
                outcomes,
                owner: Some(owner),
            });
        }
        let mats: Vec<ComplexMatrix> = outcomes.iter().map(|(_, p)| p.to_matrix()).collect();
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for m in &mats {
            sum = sum.add(m)?;
        }
        if sum.max_abs_diff(&ComplexMatrix::identity(dim))? > tol::STRUCTURAL {
            return Err(Error::InvalidInput(
                "projectors do not sum to identity".into(),
            ));
        }
        for (i, a) in mats.iter().enumerate() {
            for b in &mats[i + 1..] {
                if a.matmul(b)?.max_abs_diff(&ComplexMatrix::zeros(dim, dim))? > tol::STRUCTURAL {
                    return Err(Error::InvalidInput("projectors are not orthogonal".into()));
                }
            }
        }
        Ok(Self {
            dim,
            outcomes,
            owner: None,
        })
    }

    /// The trivial observable whose sole projector is the identity.
    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            outcomes: vec![("id".into(), Projector::identity(dim))],
            owner: Some(vec![0; dim]),
        }
    }

    /// Rank-1 projectors onto every basis state.
    pub fn canonical(dim: usize) -> Self {
        Self::canonical_on(dim, &(0..dim).collect::<Vec<_>>()).expect("indices in range")
    }

    /// Canonical on `subset`, plus a single identity projector on the
    /// remaining basis states (omitted when none remain).
    pub fn canonical_on(dim: usize, subset: &[usize]) -> Result<Self> {
        let mut in_subset = vec![false; dim];
        let mut outcomes = Vec::with_capacity(subset.len() + 1);
        for &i in subset {
            if i >= dim {
                return Err(Error::InvalidIndex { index: i, dim });
            }
            in_subset[i] = true;
            outcomes.push((format!("q{i}"), crate::projector_onto(dim, [i])?));
        }
        let rest: Vec<usize> = (0..dim).filter(|&i| !in_subset[i]).collect();
        if !rest.is_empty() {
            outcomes.push(("rest".into(), crate::projector_onto(dim, rest)?));
        }
        Self::new(outcomes)
    }

    /// Random projective measurement with `parts` outcomes: the rows of a
    /// random unitary are dealt round-robin into the outcome subspaces.
    pub fn random<R: Rng + ?Sized>(dim: usize, parts: usize, rng: &mut R) -> Result<Self> {
        if parts == 0 || parts > dim {
            return Err(Error::InvalidParameter(format!(
                "cannot split dimension {dim} into {parts} outcomes"
            )));
        }
        let basis = random_unitary(dim, rng);
        let outcomes = (0..parts)
            .map(|g| {
                let mut m = ComplexMatrix::zeros(dim, dim);
                for r in (g..dim).step_by(parts) {
                    let v = basis.row(r);
                    for i in 0..dim {
                        for j in 0..dim {
                            m.set(i, j, m.get(i, j) + v[i].conj() * v[j]);
                        }
                    }
                }
                Projector::from_matrix(m, 1e-9).map(|p| (format!("o{g}"), p))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(outcomes)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> &[(String, Projector)] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// Unnormalized post-measurement branches `(‖ξP_i‖², ξP_i)` for every
    /// outcome with nonzero probability.
    pub fn measure(&self, state: &StateVector) -> Vec<(f64, StateVector)> {
        match &self.owner {
            Some(owner) => {
                let mut buckets: BTreeMap<u32, Vec<(usize, C64)>> = BTreeMap::new();
                for &(i, a) in state.entries() {
                    buckets.entry(owner[i]).or_default().push((i, a));
                }
                buckets
                    .into_values()
                    .map(|entries| {
                        let v = StateVector::from_entries(self.dim, entries).expect("in range");
                        (v.norm_sqr(), v)
                    })
                    .filter(|(p, _)| *p > 0.0)
                    .collect()
            }
            None => self
                .outcomes
                .iter()
                .map(|(_, p)| {
                    let v = p.apply(state);
                    (v.norm_sqr(), v)
                })
                .filter(|(p, _)| *p > 0.0)
                .collect(),
        }
    }

    /// Outcomes `(i, j)` with projectors `P_i ⊗ Q_j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut outcomes = Vec::with_capacity(self.len() * other.len());
        for (la, pa) in &self.outcomes {
            for (lb, pb) in &other.outcomes {
                outcomes.push((format!("{la}|{lb}"), pa.tensor(pb)));
            }
        }
        let owner = match (&self.owner, &other.owner) {
            (Some(a), Some(b)) => {
                let nb = other.len() as u32;
                Some(
                    a.iter()
                        .flat_map(|&oa| b.iter().map(move |&ob| oa * nb + ob))
                        .collect(),
                )
            }
            _ => None,
        };
        Self {
            dim: self.dim * other.dim,
            outcomes,
            owner,
        }
    }

    /// Reindexes through `map[old] = new` and adds one projector (labelled
    /// `fresh_label`) onto the basis states outside the image.
    pub(crate) fn embed(&self, new_dim: usize, map: &[usize], fresh_label: &str) -> Self {
        let mut covered = vec![false; new_dim];
        for &m in map {
            covered[m] = true;
        }
        let mut outcomes: Vec<(String, Projector)> = self
            .outcomes
            .iter()
            .map(|(l, p)| (l.clone(), p.embed(new_dim, map)))
            .collect();
        let fresh: Vec<usize> = (0..new_dim).filter(|&i| !covered[i]).collect();
        if !fresh.is_empty() {
            outcomes.push((
                fresh_label.to_string(),
                crate::projector_onto(new_dim, fresh).expect("in range"),
            ));
        }
        Self::new(outcomes).expect("embedding preserves completeness")
    }
}

fn diagonal_owner(dim: usize, outcomes: &[(String, Projector)]) -> Result<Option<Vec<u32>>> {
    let mut owner = vec![u32::MAX; dim];
    for (o, (_, p)) in outcomes.iter().enumerate() {
        let Some(ix) = p.diagonal_indices() else {
            return Ok(None);
        };
        for &i in ix {
            if owner[i] != u32::MAX {
                return Err(Error::InvalidInput(format!(
                    "basis state {i} lies in two outcome projectors"
                )));
            }
            owner[i] = o as u32;
        }
    }
    if let Some(i) = owner.iter().position(|&o| o == u32::MAX) {
        return Err(Error::InvalidInput(format!(
            "basis state {i} is not covered by any outcome projector"
        )));
    }
    Ok(Some(owner))
}

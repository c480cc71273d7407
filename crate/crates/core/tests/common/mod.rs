//! Fixtures and reference oracles shared by the integration tests.
#![allow(dead_code)]

use lqfa_core::linalg::random_unitary;
use lqfa_core::{ComplexMatrix, Lqfa, Observable, Projector, Stage, StateVector, Unitary, C64};
use rand::Rng;

pub type Dense = Vec<Vec<C64>>;

pub fn dense(m: &ComplexMatrix) -> Dense {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// `v · m` by the textbook double loop.
pub fn row_times(v: &[C64], m: &Dense) -> Vec<C64> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols)
        .map(|c| v.iter().zip(m).map(|(x, row)| x * row[c]).sum())
        .collect()
}

pub fn norm_sqr(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Kronecker product entry by entry: `(a ⊗ b)[i·rb + k][j·cb + l] = a[i][j]·b[k][l]`.
pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut out = vec![vec![C64::new(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    a.iter().map(|row| row_times(row, b)).collect()
}

/// A stage as raw matrices: unitary and outcome projectors.
#[derive(Clone, Debug)]
pub struct RawStage {
    pub unitary: Dense,
    pub projectors: Vec<Dense>,
}

/// An LQFA as raw matrices.
#[derive(Clone, Debug)]
pub struct RawLqfa {
    pub initial: Vec<C64>,
    pub sigma: Vec<RawStage>,
    pub end: Vec<RawStage>,
    pub accept: Dense,
}

/// `Σ ‖π₀ U_1 P_{i_1} ⋯ U_m P_{i_m} U_end,1 ⋯ U_end,last P_acc‖²` over every
/// outcome sequence; the last endmarker stage is not measured.
pub fn multi_sum(a: &RawLqfa, k: usize) -> f64 {
    let mut steps: Vec<(&Dense, Option<&[Dense]>)> = Vec::new();
    for _ in 0..k {
        for s in &a.sigma {
            steps.push((&s.unitary, Some(&s.projectors)));
        }
    }
    for (i, s) in a.end.iter().enumerate() {
        let measured = i + 1 < a.end.len();
        steps.push((&s.unitary, measured.then_some(s.projectors.as_slice())));
    }
    fn go(v: Vec<C64>, rest: &[(&Dense, Option<&[Dense]>)], accept: &Dense) -> f64 {
        let Some(((u, projectors), tail)) = rest.split_first() else {
            return norm_sqr(&row_times(&v, accept));
        };
        let w = row_times(&v, u);
        match projectors {
            None => go(w, tail, accept),
            Some(ps) => ps
                .iter()
                .map(|p| {
                    let branch = row_times(&w, p);
                    if norm_sqr(&branch) == 0.0 {
                        0.0
                    } else {
                        go(branch, tail, accept)
                    }
                })
                .sum(),
        }
    }
    go(a.initial.clone(), &steps, &a.accept)
}

fn to_matrix(d: &Dense) -> ComplexMatrix {
    ComplexMatrix::from_rows(d).unwrap()
}

impl RawLqfa {
    pub fn dim(&self) -> usize {
        self.initial.len()
    }

    pub fn build(&self) -> Lqfa {
        let stage = |s: &RawStage| {
            let outcomes = s
                .projectors
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    (
                        format!("o{i}"),
                        Projector::from_matrix(to_matrix(p), 1e-10).unwrap(),
                    )
                })
                .collect();
            Stage::new(
                Unitary::from_matrix(to_matrix(&s.unitary)).unwrap(),
                Observable::new(outcomes).unwrap(),
            )
            .unwrap()
        };
        Lqfa::new(
            StateVector::new(self.initial.clone()).unwrap(),
            self.sigma.iter().map(stage).collect(),
            self.end.iter().map(stage).collect(),
            Projector::from_matrix(to_matrix(&self.accept), 1e-10).unwrap(),
        )
        .unwrap()
    }

    /// Reads the matrices back out of a leaf automaton.
    pub fn from_leaf(a: &Lqfa) -> Self {
        let (m, p) = a.as_leaf().expect("leaf automaton");
        let raw = |s: &Stage| RawStage {
            unitary: dense(&s.unitary().to_matrix()),
            projectors: s
                .observable()
                .outcomes()
                .iter()
                .map(|(_, p)| dense(&p.to_matrix()))
                .collect(),
        };
        Self {
            initial: m.initial().to_dense(),
            sigma: m.sigma_pipeline().iter().map(raw).collect(),
            end: m.end_pipeline().iter().map(raw).collect(),
            accept: dense(&p.to_matrix()),
        }
    }
}

/// Projector onto the span of `vectors` (assumed orthonormal rows).
pub fn span_projector(dim: usize, vectors: &[&[C64]]) -> Dense {
    let mut p = vec![vec![C64::new(0.0, 0.0); dim]; dim];
    for v in vectors {
        for i in 0..dim {
            for j in 0..dim {
                p[i][j] += v[i].conj() * v[j];
            }
        }
    }
    p
}

/// A random projective measurement with `parts` outcomes in a random basis,
/// or in the computational basis when `diagonal` is set.
pub fn random_projectors<R: Rng>(
    dim: usize,
    parts: usize,
    diagonal: bool,
    rng: &mut R,
) -> Vec<Dense> {
    let basis = if diagonal {
        dense(&ComplexMatrix::identity(dim))
    } else {
        dense(&random_unitary(dim, rng))
    };
    let mut owner: Vec<usize> = (0..dim).map(|i| i % parts).collect();
    for i in (1..dim).rev() {
        owner.swap(i, rng.gen_range(0..=i));
    }
    (0..parts)
        .map(|g| {
            let rows: Vec<&[C64]> = (0..dim)
                .filter(|&i| owner[i] == g)
                .map(|i| basis[i].as_slice())
                .collect();
            span_projector(dim, &rows)
        })
        .collect()
}

pub fn random_stage<R: Rng>(dim: usize, rng: &mut R) -> RawStage {
    let parts = rng.gen_range(1..=dim);
    let diagonal = rng.gen_bool(0.5);
    RawStage {
        unitary: dense(&random_unitary(dim, rng)),
        projectors: random_projectors(dim, parts, diagonal, rng),
    }
}

pub fn random_state<R: Rng>(dim: usize, rng: &mut R) -> Vec<C64> {
    let v: Vec<C64> = (0..dim)
        .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let n = norm_sqr(&v).sqrt();
    v.into_iter().map(|z| z / n).collect()
}

/// A random LQFA with `dim ≤ 4` and pipelines of at most two stages.
pub fn random_lqfa<R: Rng>(rng: &mut R) -> RawLqfa {
    let dim = rng.gen_range(1..=4);
    let sigma = (0..rng.gen_range(1..=2))
        .map(|_| random_stage(dim, rng))
        .collect();
    let end = (0..rng.gen_range(1..=2))
        .map(|_| random_stage(dim, rng))
        .collect();
    let basis = dense(&random_unitary(dim, rng));
    let rank = rng.gen_range(0..=dim);
    let rows: Vec<&[C64]> = basis[..rank].iter().map(Vec::as_slice).collect();
    RawLqfa {
        initial: random_state(dim, rng),
        sigma,
        end,
        accept: span_projector(dim, &rows),
    }
}

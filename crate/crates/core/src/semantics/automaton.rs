use std::sync::Arc;

use super::{MixedState, Stage};
use crate::linalg::{Projector, StateVector};
use crate::{tol, Error, Result};

/// A Latvian quantum finite automaton over the unary alphabet `{σ}`.
///
/// Leaf automata carry their data directly: an initial superposition, the
/// stage pipeline applied for each `σ`, the pipeline for the endmarker (whose
/// final observable is not measured) and the accepting projector.
///
/// [`product`] and [`complement`] build composite automata that keep their
/// factors separate. Every stage of a product pairs `U_a ⊗ U_b` with the
/// projectors `P_i ⊗ Q_j`, so an initial product state stays a product and
/// the ensemble of the product is the product of the factor ensembles. The
/// composite is evaluated in that factored form; [`Lqfa::to_dense`]
/// materializes the same automaton as a single leaf.
#[derive(Clone, Debug)]
pub struct Lqfa {
    body: Body,
    accept: Acceptance,
}

/// The dynamics of a leaf automaton.
#[derive(Debug)]
pub struct Machine {
    dim: usize,
    initial: StateVector,
    sigma_pipeline: Vec<Stage>,
    end_pipeline: Vec<Stage>,
}

impl Machine {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn initial(&self) -> &StateVector {
        &self.initial
    }

    pub fn sigma_pipeline(&self) -> &[Stage] {
        &self.sigma_pipeline
    }

    pub fn end_pipeline(&self) -> &[Stage] {
        &self.end_pipeline
    }
}

#[derive(Clone, Debug)]
enum Body {
    Leaf(Arc<Machine>),
    Product(Box<Body>, Box<Body>),
}

#[derive(Clone, Debug)]
enum Acceptance {
    Projector(Projector),
    Complement(Box<Acceptance>),
    Tensor(Box<Acceptance>, Box<Acceptance>),
}

/// The evolving mixed state of an automaton: one ensemble per leaf factor.
#[derive(Clone, Debug, PartialEq)]
pub enum Configuration {
    Leaf(MixedState),
    Product(Box<Configuration>, Box<Configuration>),
}

impl Configuration {
    pub fn total_weight(&self) -> f64 {
        match self {
            Configuration::Leaf(m) => m.total_weight(),
            Configuration::Product(a, b) => a.total_weight() * b.total_weight(),
        }
    }

    /// Number of pure states in the joint ensemble.
    pub fn support_size(&self) -> usize {
        match self {
            Configuration::Leaf(m) => m.members().len(),
            Configuration::Product(a, b) => a.support_size() * b.support_size(),
        }
    }
}

impl Lqfa {
    pub fn new(
        initial: StateVector,
        sigma_pipeline: Vec<Stage>,
        end_pipeline: Vec<Stage>,
        accept_projector: Projector,
    ) -> Result<Self> {
        let dim = initial.dim();
        if !initial.is_normalized(tol::NORM) {
            return Err(Error::InvalidInput(format!(
                "initial superposition has norm {}",
                initial.norm()
            )));
        }
        for stage in sigma_pipeline.iter().chain(&end_pipeline) {
            if stage.dim() != dim {
                return Err(Error::InvalidDimension(format!(
                    "stage of dimension {} in an automaton of dimension {dim}",
                    stage.dim()
                )));
            }
        }
        if accept_projector.dim() != dim {
            return Err(Error::InvalidDimension(format!(
                "accepting projector of dimension {} in an automaton of dimension {dim}",
                accept_projector.dim()
            )));
        }
        Ok(Self {
            body: Body::Leaf(Arc::new(Machine {
                dim,
                initial,
                sigma_pipeline,
                end_pipeline,
            })),
            accept: Acceptance::Projector(accept_projector),
        })
    }

    /// Number of basis states (the product of factor dimensions for composites).
    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    pub fn is_composite(&self) -> bool {
        matches!(self.body, Body::Product(..))
    }

    /// The machine and accepting projector of a leaf automaton.
    pub fn as_leaf(&self) -> Option<(&Machine, &Projector)> {
        match (&self.body, &self.accept) {
            (Body::Leaf(m), Acceptance::Projector(p)) => Some((m, p)),
            _ => None,
        }
    }

    /// Dimensions of the leaf factors, left to right.
    pub fn factor_dims(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.body.collect_dims(&mut out);
        out
    }

    pub fn initial_configuration(&self) -> Configuration {
        self.body.initial()
    }

    /// Processes one `σ`.
    pub fn read_symbol(&self, config: &Configuration) -> Configuration {
        self.body.read_symbol(config)
    }

    /// Processes the endmarker and returns the probability of observing an
    /// accepting state.
    pub fn accept_weight(&self, config: &Configuration) -> f64 {
        let finished = self.body.finish(config);
        self.accept.expectation(&finished)
    }

    /// Materializes a composite automaton as one leaf with tensor-product
    /// stages. Fails with a capacity error above `cap` basis states.
    pub fn to_dense(&self, cap: usize) -> Result<Self> {
        if self.dim() > cap {
            return Err(Error::Capacity {
                what: "dense product automaton".into(),
                required: self.dim(),
                cap,
            });
        }
        let (machine, accept) = densify(&self.body, &self.accept);
        Ok(Self {
            body: Body::Leaf(Arc::new(machine)),
            accept: Acceptance::Projector(accept),
        })
    }
}

impl Body {
    fn dim(&self) -> usize {
        match self {
            Body::Leaf(m) => m.dim,
            Body::Product(a, b) => a.dim() * b.dim(),
        }
    }

    fn collect_dims(&self, out: &mut Vec<usize>) {
        match self {
            Body::Leaf(m) => out.push(m.dim),
            Body::Product(a, b) => {
                a.collect_dims(out);
                b.collect_dims(out);
            }
        }
    }

    fn initial(&self) -> Configuration {
        match self {
            Body::Leaf(m) => Configuration::Leaf(
                MixedState::pure(m.initial.clone()).expect("validated at construction"),
            ),
            Body::Product(a, b) => {
                Configuration::Product(Box::new(a.initial()), Box::new(b.initial()))
            }
        }
    }

    fn read_symbol(&self, config: &Configuration) -> Configuration {
        match (self, config) {
            (Body::Leaf(m), Configuration::Leaf(state)) => Configuration::Leaf(
                m.sigma_pipeline
                    .iter()
                    .fold(state.clone(), |acc, stage| acc.evolve(stage, true)),
            ),
            (Body::Product(a, b), Configuration::Product(ca, cb)) => {
                Configuration::Product(Box::new(a.read_symbol(ca)), Box::new(b.read_symbol(cb)))
            }
            _ => panic!("configuration does not belong to this automaton"),
        }
    }

    fn finish(&self, config: &Configuration) -> Configuration {
        match (self, config) {
            (Body::Leaf(m), Configuration::Leaf(state)) => {
                let last = m.end_pipeline.len().saturating_sub(1);
                Configuration::Leaf(
                    m.end_pipeline
                        .iter()
                        .enumerate()
                        .fold(state.clone(), |acc, (i, stage)| {
                            acc.evolve(stage, i != last)
                        }),
                )
            }
            (Body::Product(a, b), Configuration::Product(ca, cb)) => {
                Configuration::Product(Box::new(a.finish(ca)), Box::new(b.finish(cb)))
            }
            _ => panic!("configuration does not belong to this automaton"),
        }
    }
}

impl Acceptance {
    fn expectation(&self, config: &Configuration) -> f64 {
        match (self, config) {
            (Acceptance::Complement(inner), c) => c.total_weight() - inner.expectation(c),
            (Acceptance::Projector(p), Configuration::Leaf(m)) => m.expectation(p),
            (Acceptance::Tensor(x, y), Configuration::Product(a, b)) => {
                x.expectation(a) * y.expectation(b)
            }
            _ => panic!("acceptance tree does not match the configuration"),
        }
    }

    fn complement(self) -> Self {
        match self {
            Acceptance::Projector(p) => Acceptance::Projector(p.complement()),
            Acceptance::Complement(inner) => *inner,
            other => Acceptance::Complement(Box::new(other)),
        }
    }
}

fn densify(body: &Body, accept: &Acceptance) -> (Machine, Projector) {
    match (body, accept) {
        (b, Acceptance::Complement(inner)) => {
            let (m, p) = densify(b, inner);
            (m, p.complement())
        }
        (Body::Leaf(m), Acceptance::Projector(p)) => (
            Machine {
                dim: m.dim,
                initial: m.initial.clone(),
                sigma_pipeline: m.sigma_pipeline.clone(),
                end_pipeline: m.end_pipeline.clone(),
            },
            p.clone(),
        ),
        (Body::Product(a, b), Acceptance::Tensor(x, y)) => {
            let (ma, pa) = densify(a, x);
            let (mb, pb) = densify(b, y);
            let pair = |sa: &[Stage], sb: &[Stage], pad_front: bool| -> Vec<Stage> {
                let len = sa.len().max(sb.len());
                let padded = |s: &[Stage], dim: usize| -> Vec<Stage> {
                    let fill = std::iter::repeat_with(|| Stage::identity(dim)).take(len - s.len());
                    if pad_front {
                        fill.chain(s.iter().cloned()).collect()
                    } else {
                        s.iter().cloned().chain(fill).collect()
                    }
                };
                padded(sa, ma.dim)
                    .iter()
                    .zip(&padded(sb, mb.dim))
                    .map(|(x, y)| x.tensor(y))
                    .collect()
            };
            (
                Machine {
                    dim: ma.dim * mb.dim,
                    initial: ma.initial.tensor(&mb.initial),
                    sigma_pipeline: pair(&ma.sigma_pipeline, &mb.sigma_pipeline, false),
                    // keep the unmeasured final stages aligned
                    end_pipeline: pair(&ma.end_pipeline, &mb.end_pipeline, true),
                },
                pa.tensor(&pb),
            )
        }
        _ => panic!("acceptance tree does not match the automaton body"),
    }
}

/// The automaton inducing `1 - p_a`: accepting projector replaced by `I - P_acc`.
pub fn complement(a: &Lqfa) -> Lqfa {
    Lqfa {
        body: a.body.clone(),
        accept: a.accept.clone().complement(),
    }
}

/// The component-wise direct product, inducing `p_a · p_b`.
pub fn product(a: &Lqfa, b: &Lqfa) -> Result<Lqfa> {
    if a.dim().checked_mul(b.dim()).is_none() {
        return Err(Error::Capacity {
            what: "product automaton".into(),
            required: usize::MAX,
            cap: usize::MAX,
        });
    }
    Ok(Lqfa {
        body: Body::Product(Box::new(a.body.clone()), Box::new(b.body.clone())),
        accept: Acceptance::Tensor(Box::new(a.accept.clone()), Box::new(b.accept.clone())),
    })
}

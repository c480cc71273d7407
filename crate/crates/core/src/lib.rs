//! Latvian quantum finite automata (LQFAs) over a unary alphabet.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense complex matrices, sparse state vectors, projectors,
//!   block unitaries, the Fourier and cyclic-permutation matrices.
//! - [`semantics`]: observables, stage pipelines, weighted pure-state
//!   ensembles, the LQFA event algebra (complement, product) and cut-point
//!   reporting, plus measure-many acceptance for comparison.
//! - [`mell`]: the `M^(l)` family recognising `σ^{≥l}`, its stochastic
//!   recurrence and the `l = 3` closed form.
//! - [`unary`]: unary DFAs in `(T, P, accept)` form and the assembly of an
//!   isolated cut point 1/2 recognizer from them.

pub mod error;
pub mod linalg;
pub mod mell;
pub mod semantics;
pub mod unary;

pub use error::{Error, Result};
pub use linalg::{
    cyclic_permutation, fourier, is_unitary, projector_onto, tensor, ComplexMatrix, Projector,
    StateVector, Unitary, C64,
};
pub use mell::{
    build_m1, build_mell, build_mell_capped, closed_form_m3, expand, expand_capped, mell_dim,
    recurrence_event, recurrence_step, shortcut_isolation_m3, shortcut_radius_m3, MellAutomaton,
    RecurrenceState,
};
pub use semantics::{
    accept_probability, apply_stage, complement, cut_point_report, cut_point_report_with_tolerance,
    event_table, mm_accept_probability, product, Configuration, CutPointReport, EventTable, Lqfa,
    Machine, MixedState, MmQfa, Observable, Stage,
};
pub use unary::{
    assemble, assemble_unchecked, build_periodic_moqfa, choose_n, isolation_bound,
    lift_finite_part, lift_periodic_part, membership, report_for, verify, AssembledRecognizer,
    Mode, SynthesisParams, UnaryDfa,
};

/// Numeric tolerances shared across the crate.
pub mod tol {
    /// Structural predicates (unitarity, projector checks, observable completeness).
    pub const STRUCTURAL: f64 = 1e-10;
    /// Probability comparisons.
    pub const PROBABILITY: f64 = 1e-9;
    /// Norm of an initial superposition.
    pub const NORM: f64 = 1e-12;
    /// Ensemble branches below this probability are dropped.
    pub const PRUNE: f64 = 1e-12;
    /// Two normalized states are merged when `|<x,y>| >= 1 - MERGE`.
    pub const MERGE: f64 = 1e-10;
}

/// Default cap on the number of basis states of any dense factor.
pub const DEFAULT_DIM_CAP: usize = 10_000;

//! Dense complex linear algebra in the row-vector convention: states are row
//! vectors and evolution is right multiplication `ξ · U`.

mod matrix;
mod projector;
mod state;
mod unitary;

pub use matrix::{cyclic_permutation, fourier, is_unitary, random_unitary, tensor, ComplexMatrix};
pub use num_complex::Complex64 as C64;
pub use projector::{projector_onto, Projector};
pub use state::StateVector;
pub use unitary::Unitary;

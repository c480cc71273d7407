//! Fixtures shared by the benchmarks.

use lqfa_core::{assemble, AssembledRecognizer, SynthesisParams, UnaryDfa};

/// `T = 2, P = 3`, accepting lengths 0 and `2 + 3h + 1`.
pub fn small_dfa() -> UnaryDfa {
    UnaryDfa::new(2, 3, [0, 3]).expect("valid DFA")
}

/// The largest preperiod exercised by the end-to-end checks.
pub fn large_dfa() -> UnaryDfa {
    UnaryDfa::new(3, 5, [0, 2, 4, 7]).expect("valid DFA")
}

pub fn recognizer(d: &UnaryDfa) -> AssembledRecognizer {
    assemble(d, SynthesisParams::auto(d)).expect("fits the default cap")
}

/// `(n, ell)` points for the simulation benchmarks.
pub const MELL_GRID: [(usize, usize); 4] = [(3, 3), (4, 3), (2, 5), (7, 4)];

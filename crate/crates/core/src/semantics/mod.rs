//! Executable LQFA semantics and the event algebra.

mod automaton;
mod ensemble;
mod event;
mod mm;
mod observable;

pub use automaton::{complement, product, Configuration, Lqfa, Machine};
pub use ensemble::{apply_stage, MixedState, Stage};
pub use event::{
    accept_probability, cut_point_report, cut_point_report_with_tolerance, event_table,
    CutPointReport, EventTable,
};
pub use mm::{mm_accept_probability, MmQfa};
pub use observable::Observable;

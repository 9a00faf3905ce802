//! The 1→2 cloning protocol: register, pulse schedule (two-cavity and
//! single-cavity/two-mode variants), analytic target state, execution and
//! the clone report.
//!
//! Register order is `[A1, A2, A3, A4, mode a, mode b]`. A₂ carries the
//! input qubit `α|+⟩ + β|−⟩` with `|±⟩ = (|i⟩ ± |g⟩)/√2`; A₃ and A₄ end up
//! holding the clones.

mod config;
mod equatorial;
mod inputs;
mod oracle;
mod report;
mod runner;
mod schedule;

pub use config::{
    protocol_layout, A1Preparation, Corrections, Engine, ProtocolConfig, ProtocolVariant, QubitInput,
    A1, A2, A3, A4, MODE_A, MODE_B, SUBSYSTEM_LABELS,
};
pub use equatorial::{equatorial_input, equatorial_run, EQUATORIAL_EMBEDDING};
pub use inputs::{bloch_grid, random_inputs};
pub use oracle::{
    ancilla_analysis, expected_output, expected_output_with, prepare_blank, prepare_input,
    AncillaAnalysis,
};
pub use report::{CloneReport, TimingSummary};
pub use runner::{clone_report, run_protocol, run_pure_traced, FinalState, PLUS_MINUS_EMBEDDING};
pub(crate) use runner::{execute_pure, initial_locals, initial_state};
pub use schedule::{build_schedule, Schedule, ScheduleStep, Stage};

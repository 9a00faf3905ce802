//! Numerical simulation of the 1→2 universal quantum cloning machine in
//! cavity QED.
//!
//! The crate is organised bottom-up:
//!
//! * [`quantum`]: dense tensor-product registers of three-level atoms and
//!   truncated field modes, pure and mixed state propagation, partial traces
//!   and fidelities.
//! * [`gates`]: the resonant Jaynes–Cummings pulses, the 2π phase gate,
//!   classical microwave pulses and the phase calibration that maps the
//!   physical pulse convention onto the phase-free one.
//! * [`protocol`]: the four-atom / two-mode cloning schedule, its analytic
//!   target state and the clone report.
//! * [`noise`]: cavity damping, pulse over-rotation Monte Carlo, timing
//!   feasibility and the fidelity budget arithmetic.

pub mod error;
pub mod gates;
pub mod noise;
pub mod protocol;
pub mod quantum;

pub use error::{Error, Result};

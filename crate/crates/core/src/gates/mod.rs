//! Physical pulse set: resonant atom–mode (Jaynes–Cummings) pulses, the 2π
//! phase gate, classical microwave pulses between atomic levels, diagonal
//! phase corrections, and the calibration tying the two pulse conventions
//! together.

mod calibration;
mod pulse;
mod pulses;

pub use calibration::{
    calibrate_phases, derive_corrections, Calibration, PhaseCorrection, Placement, CALIBRATION_GRID,
    CALIBRATION_THRESHOLD,
};
pub use pulse::{Pulse, PulseKind};
pub use pulses::{
    a1_preparation_theta, classical_pulse, encoding_mix, jc_pulse, phase_shift, qpg, JcConvention,
    Transition, ENCODING_MIX_THETA, EQUATORIAL_PREPARATION_THETA, PREPARATION_PHASE,
};

/// Atom level indices in the fixed `(g, e, i)` basis order.
pub mod level {
    pub const G: usize = 0;
    pub const E: usize = 1;
    pub const I: usize = 2;
}

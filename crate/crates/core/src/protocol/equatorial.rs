use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::config::{A1Preparation, ProtocolConfig, ProtocolVariant, QubitInput};
use super::report::CloneReport;
use super::runner::run_protocol;
use crate::quantum::C64;
use crate::{Error, Result};

/// Qubit labels used for equatorial inputs.
pub const EQUATORIAL_EMBEDDING: &str = "equatorial qubit |0>=|->, |1>=|+>";

/// `(|0⟩ + e^{iφ}|1⟩)/√2` under [`EQUATORIAL_EMBEDDING`], i.e.
/// `α = e^{iφ}/√2` on `|+⟩` and `β = 1/√2` on `|−⟩`.
pub fn equatorial_input(phi: f64) -> QubitInput {
    QubitInput {
        alpha: C64::from_polar(FRAC_1_SQRT_2, phi),
        beta: C64::new(FRAC_1_SQRT_2, 0.0),
    }
}

/// Runs the schedule with the equal-weight first-atom preparation on an
/// equatorial input.
pub fn equatorial_run(phi: f64, variant: ProtocolVariant) -> Result<CloneReport> {
    if !(0.0..2.0 * PI).contains(&phi) {
        return Err(Error::InvalidParameter(format!(
            "equatorial phase must lie in [0, 2π), got {phi}"
        )));
    }
    let config = ProtocolConfig {
        variant,
        a1_preparation: A1Preparation::Equatorial,
        ..ProtocolConfig::default()
    }
    .with_input(equatorial_input(phi));
    let (_, mut report) = run_protocol(&config)?;
    report.qubit_embedding = EQUATORIAL_EMBEDDING.to_string();
    Ok(report)
}

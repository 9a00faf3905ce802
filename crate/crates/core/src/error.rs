use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid register: {0}")]
    InvalidRegister(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("subsystem index {index} out of range for a register of {len} subsystems")]
    TargetOutOfRange { index: usize, len: usize },

    #[error("{what} is not normalized (norm {norm})")]
    NotNormalized { what: &'static str, norm: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("population {leakage:.3e} outside the qubit subspace exceeds tolerance {tolerance:.1e}")]
    Leakage { leakage: f64, tolerance: f64 },

    #[error("phase calibration failed: {0}")]
    Calibration(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors caused by caller input rather than by the simulator.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::Leakage { .. } | Error::Calibration(_) | Error::Invariant(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which windows cavity damping is applied in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum DampingMode {
    /// Only while a mode stores information (loading pulse to readout pulse).
    #[default]
    LoadedOnly,
    /// Every transit window of the schedule, for both modes.
    Always,
}

/// Cavity relaxation plus Gaussian fractional over-rotation of every pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseModel {
    /// Energy relaxation time of each mode, seconds.
    pub cavity_t1: f64,
    /// Standard deviation of the fractional over-rotation `ε` in `θ → θ(1+ε)`.
    pub pulse_sigma: f64,
    pub seed: u64,
    pub trials: usize,
    pub damping: DampingMode,
}

impl Default for NoiseModel {
    fn default() -> Self {
        Self {
            cavity_t1: 1e-3,
            pulse_sigma: 0.0,
            seed: 0,
            trials: 200,
            damping: DampingMode::LoadedOnly,
        }
    }
}

impl NoiseModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.cavity_t1 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "cavity T1 must be positive, got {}",
                self.cavity_t1
            )));
        }
        if !(self.pulse_sigma >= 0.0) || !self.pulse_sigma.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "pulse sigma must be a finite non-negative number, got {}",
                self.pulse_sigma
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        Ok(())
    }

    /// True when neither damping nor pulse errors can act.
    pub fn is_noiseless(&self) -> bool {
        self.cavity_t1.is_infinite() && self.pulse_sigma == 0.0
    }
}

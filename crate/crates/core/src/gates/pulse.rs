use serde::{Deserialize, Serialize};

use super::pulses::{classical_pulse, encoding_mix, jc_pulse, phase_shift, JcConvention, Transition};
use crate::quantum::{LocalOperator, Matrix, RegisterLayout, SubsystemKind};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulseKind {
    Jc,
    Classical,
    Mixing,
    PhaseShift,
}

impl PulseKind {
    pub fn name(self) -> &'static str {
        match self {
            PulseKind::Jc => "jc",
            PulseKind::Classical => "classical",
            PulseKind::Mixing => "mixing",
            PulseKind::PhaseShift => "phase_shift",
        }
    }
}

/// One pulse of a schedule. Subsystem fields are register indices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pulse {
    /// Resonant atom–mode interaction; `theta` is the vacuum Rabi angle.
    Jc { atom: usize, mode: usize, theta: f64 },
    Classical {
        atom: usize,
        transition: Transition,
        theta: f64,
        phase: f64,
    },
    /// The `{g, i}` re-encoding pulse (see [`encoding_mix`]).
    Mixing { atom: usize, theta: f64 },
    PhaseShift { atom: usize, phases: [f64; 3] },
}

impl Pulse {
    pub fn kind(&self) -> PulseKind {
        match self {
            Pulse::Jc { .. } => PulseKind::Jc,
            Pulse::Classical { .. } => PulseKind::Classical,
            Pulse::Mixing { .. } => PulseKind::Mixing,
            Pulse::PhaseShift { .. } => PulseKind::PhaseShift,
        }
    }

    pub fn atom(&self) -> usize {
        match *self {
            Pulse::Jc { atom, .. }
            | Pulse::Classical { atom, .. }
            | Pulse::Mixing { atom, .. }
            | Pulse::PhaseShift { atom, .. } => atom,
        }
    }

    pub fn mode(&self) -> Option<usize> {
        match *self {
            Pulse::Jc { mode, .. } => Some(mode),
            _ => None,
        }
    }

    pub fn targets(&self) -> Vec<usize> {
        match self.mode() {
            Some(m) => vec![self.atom(), m],
            None => vec![self.atom()],
        }
    }

    pub fn theta(&self) -> Option<f64> {
        match *self {
            Pulse::Jc { theta, .. } | Pulse::Classical { theta, .. } | Pulse::Mixing { theta, .. } => {
                Some(theta)
            }
            Pulse::PhaseShift { .. } => None,
        }
    }

    pub fn phase(&self) -> f64 {
        match *self {
            Pulse::Classical { phase, .. } => phase,
            _ => 0.0,
        }
    }

    /// Copy with the rotation angle multiplied by `factor`. Phase shifts are
    /// bookkeeping, not driven pulses, and are returned unchanged.
    pub fn with_scaled_angle(&self, factor: f64) -> Pulse {
        let mut p = *self;
        match &mut p {
            Pulse::Jc { theta, .. } | Pulse::Classical { theta, .. } | Pulse::Mixing { theta, .. } => {
                *theta *= factor
            }
            Pulse::PhaseShift { .. } => {}
        }
        p
    }

    fn check_kinds(&self, layout: &RegisterLayout) -> Result<()> {
        layout.check_targets(&self.targets())?;
        if layout.subsystems()[self.atom()].kind != SubsystemKind::Atom3 {
            return Err(Error::InvalidParameter(format!(
                "pulse target {} is not an atom",
                self.atom()
            )));
        }
        if let Some(m) = self.mode() {
            if layout.subsystems()[m].kind != SubsystemKind::Mode {
                return Err(Error::InvalidParameter(format!("pulse target {m} is not a mode")));
            }
        }
        Ok(())
    }

    /// Local matrix on [`Pulse::targets`].
    pub fn matrix(&self, layout: &RegisterLayout, convention: JcConvention) -> Result<Matrix> {
        self.check_kinds(layout)?;
        Ok(match *self {
            Pulse::Jc { mode, theta, .. } => jc_pulse(layout.dim(mode), theta, convention)?,
            Pulse::Classical {
                transition,
                theta,
                phase,
                ..
            } => classical_pulse(transition, theta, phase),
            Pulse::Mixing { theta, .. } => encoding_mix(theta),
            Pulse::PhaseShift { phases, .. } => phase_shift(phases),
        })
    }

    pub fn operator(&self, layout: &RegisterLayout, convention: JcConvention) -> Result<LocalOperator> {
        LocalOperator::unitary(self.targets(), self.matrix(layout, convention)?)
    }
}

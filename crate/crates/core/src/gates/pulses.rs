use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::level::{E, G, I};
use crate::quantum::{identity, Matrix, C64};
use crate::{Error, Result};

/// Phase convention of the resonant atom–mode rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum JcConvention {
    /// `exp(−iθ/2 (a σ⁺ + a† σ⁻))`: `−i sin` on the sidebands.
    Physical,
    /// `exp(θ/2 (a σ⁺ − a† σ⁻))`: real rotation, phase-free state transfer.
    #[default]
    Idealized,
}

/// Pair of atomic levels driven by a classical pulse, written `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Transition {
    Ge,
    Gi,
    Ei,
}

impl Transition {
    pub fn levels(self) -> (usize, usize) {
        match self {
            Transition::Ge => (G, E),
            Transition::Gi => (G, I),
            Transition::Ei => (E, I),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Transition::Ge => "ge",
            Transition::Gi => "gi",
            Transition::Ei => "ei",
        }
    }
}

impl std::str::FromStr for Transition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ge" => Ok(Transition::Ge),
            "gi" => Ok(Transition::Gi),
            "ei" => Ok(Transition::Ei),
            other => Err(Error::InvalidParameter(format!(
                "unknown transition '{other}' (expected ge, gi or ei)"
            ))),
        }
    }
}

/// Rotation angle of the `g ↔ e` pulse leaving `√(2/3)` on `|g⟩` and `√(1/3)` on `|e⟩`.
pub fn a1_preparation_theta() -> f64 {
    2.0 * (1.0f64 / 3.0).sqrt().asin()
}

/// Equal-weight `g ↔ e` preparation.
pub const EQUATORIAL_PREPARATION_THETA: f64 = FRAC_PI_2;

/// Phase of the first atom's preparation pulse. The idealized rotation sends
/// `|e,0⟩ → −|g,1⟩`; preparing `√(2/3)|g⟩ − √(1/3)|e⟩` makes the loaded mode
/// `√(2/3)|0⟩ + √(1/3)|1⟩`.
pub const PREPARATION_PHASE: f64 = PI;

pub const ENCODING_MIX_THETA: f64 = FRAC_PI_2;

/// Resonant atom–mode pulse on `atom ⊗ mode` (local index `level · mode_dim + n`).
///
/// `theta` is the vacuum Rabi angle. In the manifold spanned by `|e,n⟩` and
/// `|g,n+1⟩` the rotation angle is `θ√(n+1)`; `|g,0⟩`, every `|i,n⟩`, and the
/// truncated top state `|e,n_max⟩` are left invariant.
pub fn jc_pulse(mode_dim: usize, theta: f64, convention: JcConvention) -> Result<Matrix> {
    if mode_dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "mode dimension must be >= 2, got {mode_dim}"
        )));
    }
    if !(theta >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Rabi angle must be non-negative, got {theta}"
        )));
    }
    let mut u = identity(3 * mode_dim);
    let ix = |lvl: usize, n: usize| lvl * mode_dim + n;
    for n in 0..mode_dim - 1 {
        let half = 0.5 * theta * ((n + 1) as f64).sqrt();
        let (s, c) = half.sin_cos();
        let (e, g) = (ix(E, n), ix(G, n + 1));
        u[[e, e]] = C64::new(c, 0.0);
        u[[g, g]] = C64::new(c, 0.0);
        match convention {
            JcConvention::Physical => {
                u[[g, e]] = C64::new(0.0, -s);
                u[[e, g]] = C64::new(0.0, -s);
            }
            JcConvention::Idealized => {
                u[[g, e]] = C64::new(-s, 0.0);
                u[[e, g]] = C64::new(s, 0.0);
            }
        }
    }
    Ok(u)
}

/// Quantum phase gate: the 2π Rabi pulse. On `{i, g} ⊗ {0, 1}` it is
/// `diag(1, 1, 1, −1)`, i.e. a CNOT in the `|±⟩` basis controlled by the photon.
pub fn qpg(mode_dim: usize, convention: JcConvention) -> Result<Matrix> {
    jc_pulse(mode_dim, 2.0 * PI, convention)
}

/// Rotation on one level pair with the third level untouched:
/// `|a⟩ → cos(θ/2)|a⟩ + e^{iφ} sin(θ/2)|b⟩`, `|b⟩ → −e^{−iφ} sin(θ/2)|a⟩ + cos(θ/2)|b⟩`.
pub fn classical_pulse(transition: Transition, theta: f64, phase: f64) -> Matrix {
    let (a, b) = transition.levels();
    let (s, c) = (0.5 * theta).sin_cos();
    let mut u = identity(3);
    u[[a, a]] = C64::new(c, 0.0);
    u[[b, b]] = C64::new(c, 0.0);
    u[[b, a]] = C64::from_polar(s, phase);
    u[[a, b]] = -C64::from_polar(s, -phase);
    u
}

/// Re-encoding pulse taking `|g⟩ → (|i⟩ − |g⟩)/√2` and `|i⟩ → (|i⟩ + |g⟩)/√2`
/// at `θ = π/2`.
///
/// The target map has determinant −1 on the `{g, i}` block, so it is built
/// as the `g ↔ i` rotation by `θ` (phase 0) followed by a π phase on `|g⟩`.
/// At the preset angle the matrix is real, symmetric and its own inverse.
pub fn encoding_mix(theta: f64) -> Matrix {
    let flip = phase_shift([PI, 0.0, 0.0]);
    flip.dot(&classical_pulse(Transition::Gi, theta, 0.0))
}

/// `diag(e^{iφ_g}, e^{iφ_e}, e^{iφ_i})`.
pub fn phase_shift(phases: [f64; 3]) -> Matrix {
    let mut u = Matrix::zeros((3, 3));
    for (k, &p) in phases.iter().enumerate() {
        u[[k, k]] = if p == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            C64::from_polar(1.0, p)
        };
    }
    u
}

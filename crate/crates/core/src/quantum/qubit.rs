use serde::{Deserialize, Serialize};

use super::matrix::{Matrix, C64};
use super::register::SubsystemKind;
use super::state::DensityState;
use crate::{Error, Result};

pub const DEFAULT_LEAKAGE_TOLERANCE: f64 = 1e-9;

/// Two-level span of a three-level atom used as a qubit.
///
/// `Ig` maps `|i⟩ → |0⟩`, `|g⟩ → |1⟩`, so `|±⟩ = (|i⟩ ± |g⟩)/√2` sit at
/// Bloch `x = ±1`. `Ge` maps `|g⟩ → |0⟩`, `|e⟩ → |1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QubitBasis {
    Ig,
    Ge,
}

impl QubitBasis {
    /// Atom levels (in `g, e, i` numbering) for qubit states `|0⟩`, `|1⟩`.
    pub fn levels(self) -> [usize; 2] {
        match self {
            QubitBasis::Ig => [2, 0],
            QubitBasis::Ge => [0, 1],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReducedQubit {
    /// Renormalised 2×2 density matrix.
    pub rho: Matrix,
    /// Population discarded by the projection.
    pub leakage: f64,
}

/// Projects a single-atom state onto a qubit span and renormalises.
/// Fails when the discarded population exceeds `tolerance`.
pub fn qubit_reduce(rho_atom: &DensityState, basis: QubitBasis, tolerance: f64) -> Result<ReducedQubit> {
    let l = rho_atom.layout();
    if l.len() != 1 || l.subsystems()[0].kind != SubsystemKind::Atom3 {
        return Err(Error::InvalidParameter(
            "qubit_reduce expects a single-atom state".into(),
        ));
    }
    let m = rho_atom.matrix();
    let lv = basis.levels();
    let mut rho = Matrix::from_shape_fn((2, 2), |(r, c)| m[[lv[r], lv[c]]]);
    let kept = (rho[[0, 0]] + rho[[1, 1]]).re;
    let leakage = (m.diag().sum().re - kept).max(0.0);
    if leakage > tolerance {
        return Err(Error::Leakage { leakage, tolerance });
    }
    rho.mapv_inplace(|z| z / kept);
    Ok(ReducedQubit { rho, leakage })
}

/// Pauli expectation values `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)` with `ρ = (I + xX + yY + zZ)/2`.
pub fn bloch_vector(rho2: &Matrix) -> [f64; 3] {
    let off: C64 = rho2[[0, 1]];
    [
        2.0 * off.re,
        -2.0 * off.im,
        (rho2[[0, 0]] - rho2[[1, 1]]).re,
    ]
}

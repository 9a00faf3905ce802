use serde::{Deserialize, Serialize};

use super::pulse::Pulse;
use super::pulses::{jc_pulse, phase_shift, JcConvention};
use crate::protocol::{
    bloch_grid, build_schedule, expected_output, run_protocol, Corrections, ProtocolConfig, ProtocolVariant,
    Schedule,
};
use crate::quantum::{dagger, identity, kron, max_abs_diff, EXACT_TOL};
use crate::{Error, Result};

/// Grid size used by [`calibrate_phases`].
pub const CALIBRATION_GRID: usize = 64;
/// Minimum worst-case oracle overlap accepted by [`calibrate_phases`].
pub const CALIBRATION_THRESHOLD: f64 = 1.0 - 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    Before,
    After,
}

/// Diagonal phase pulse inserted next to step `step` of the uncorrected schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseCorrection {
    pub step: usize,
    pub placement: Placement,
    pub atom: usize,
    /// Phases on `(g, e, i)`.
    pub phases: [f64; 3],
}

/// Result of a successful calibration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    pub variant: ProtocolVariant,
    pub convention: JcConvention,
    pub corrections: Vec<PhaseCorrection>,
    /// Smallest `|⟨expected|final⟩|` over the grid.
    pub worst_overlap: f64,
    /// Largest deviation of either clone fidelity from 5/6 over the grid.
    pub worst_fidelity_error: f64,
    pub grid_points: usize,
}

/// Phase corrections making every resonant pulse of `schedule` act like its
/// idealized counterpart.
///
/// Each physical pulse `P` is matched against the idealized `M` by a phase
/// `u` on the excited level: `M = E† P E` with `E = diag(1, u, 1) ⊗ I`.
/// `E` goes in before the pulse and `E†` after it. Fails when no such phase
/// reproduces `M`.
pub fn derive_corrections(schedule: &Schedule) -> Result<Vec<PhaseCorrection>> {
    if schedule.convention == JcConvention::Idealized {
        return Ok(Vec::new());
    }
    let mode_dim = schedule.n_max + 1;
    let mut out = Vec::new();
    for (k, step) in schedule.steps.iter().enumerate() {
        let Pulse::Jc { atom, theta, .. } = step.pulse else {
            continue;
        };
        let p = jc_pulse(mode_dim, theta, JcConvention::Physical)?;
        let m = jc_pulse(mode_dim, theta, JcConvention::Idealized)?;
        // strongest e,n -> g,n+1 coupling fixes the phase
        let (row, col) = (0..mode_dim - 1)
            .map(|n| (n + 1, mode_dim + n))
            .max_by(|a, b| m[*a].norm().total_cmp(&m[*b].norm()))
            .expect("mode_dim >= 2");
        if m[(row, col)].norm() < 1e-9 {
            continue;
        }
        let u = m[(row, col)] / p[(row, col)];
        let phase = u.arg();
        let e = kron(&phase_shift([0.0, phase, 0.0]), &identity(mode_dim));
        let err = max_abs_diff(&dagger(&e).dot(&p).dot(&e), &m);
        if err > EXACT_TOL {
            return Err(Error::Calibration(format!(
                "step {k}: no excited-level phase maps the physical pulse onto the idealized one (residual {err:.3e})"
            )));
        }
        out.push(PhaseCorrection {
            step: k,
            placement: Placement::Before,
            atom,
            phases: [0.0, phase, 0.0],
        });
        out.push(PhaseCorrection {
            step: k,
            placement: Placement::After,
            atom,
            phases: [0.0, -phase, 0.0],
        });
    }
    Ok(out)
}

/// Derives the corrections for `variant` and checks them against the
/// analytic target on a [`CALIBRATION_GRID`]-point Bloch grid.
pub fn calibrate_phases(variant: ProtocolVariant, convention: JcConvention, n_max: usize) -> Result<Calibration> {
    let base = ProtocolConfig {
        variant,
        convention,
        n_max,
        ..ProtocolConfig::default()
    };
    let corrections = derive_corrections(&build_schedule(&base)?)?;
    let calibrated = ProtocolConfig {
        corrections: Corrections::Calibrated,
        ..base
    };
    let five_sixths = 5.0 / 6.0;
    let mut worst_overlap = f64::INFINITY;
    let mut worst_fidelity_error = 0.0f64;
    let mut worst_at = (0.0, 0.0);
    for (theta, phi) in bloch_grid(CALIBRATION_GRID) {
        let input = crate::protocol::QubitInput::from_bloch_angles(theta, phi);
        let (state, report) = run_protocol(&calibrated.clone().with_input(input))?;
        let target = expected_output(input, n_max)?;
        let overlap = state.overlap_with(&target)?;
        if overlap < worst_overlap {
            worst_overlap = overlap;
            worst_at = (theta, phi);
        }
        worst_fidelity_error = worst_fidelity_error
            .max((report.f3 - five_sixths).abs())
            .max((report.f4 - five_sixths).abs());
    }
    if !(worst_overlap >= CALIBRATION_THRESHOLD) {
        return Err(Error::Calibration(format!(
            "no input-independent correction found: worst overlap {worst_overlap:.12} at theta={:.6} phi={:.6}",
            worst_at.0, worst_at.1
        )));
    }
    Ok(Calibration {
        variant,
        convention,
        corrections,
        worst_overlap,
        worst_fidelity_error,
        grid_points: CALIBRATION_GRID,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_2;

    use super::*;

    #[test]
    fn idealized_needs_nothing() {
        let c = calibrate_phases(ProtocolVariant::TwoCavity, JcConvention::Idealized, 2).unwrap();
        assert!(c.corrections.is_empty());
        assert!(c.worst_overlap > 1.0 - 1e-12);
    }

    #[test]
    fn physical_corrections_are_quarter_turns_on_e() {
        let s = build_schedule(&ProtocolConfig {
            convention: JcConvention::Physical,
            ..ProtocolConfig::default()
        })
        .unwrap();
        let c = derive_corrections(&s).unwrap();
        assert_eq!(c.len(), 14);
        for pair in c.chunks(2) {
            assert_eq!(pair[0].placement, Placement::Before);
            assert!((pair[0].phases[1] + FRAC_PI_2).abs() < 1e-12);
            assert!((pair[1].phases[1] - FRAC_PI_2).abs() < 1e-12);
            assert_eq!(pair[0].phases[0], 0.0);
        }
    }
}

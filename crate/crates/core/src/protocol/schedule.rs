use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::config::{
    protocol_layout, A1Preparation, Corrections, ProtocolConfig, ProtocolVariant, A1, A2, A3, A4,
    MODE_A, MODE_B, SUBSYSTEM_LABELS,
};
use crate::gates::{
    a1_preparation_theta, derive_corrections, JcConvention, PhaseCorrection, Placement, Pulse, Transition,
    ENCODING_MIX_THETA, EQUATORIAL_PREPARATION_THETA, PREPARATION_PHASE,
};
use crate::noise::TimingModel;
use crate::{Error, Result};

/// Logical stage of the protocol a step belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    /// Classical `g ↔ e` pulse on A₁.
    PrepareA1,
    /// A₁ hands its excitation to mode a (π).
    LoadModeA,
    /// A₂ crosses mode a performing the 2π phase gate.
    PhaseGate,
    /// A₃ takes half the photon (π/2).
    Split,
    /// A₄ absorbs what is left in mode a (π), emptying it.
    UnloadModeA,
    /// Classical pulses moving A₂, A₃, A₄ between the cavity and qubit encodings.
    Reencode,
    /// A₂ writes the input into mode b (π).
    LoadModeB,
    /// A₃ and A₄ each perform a 2π phase gate with mode b.
    CloneGate,
    /// Calibrated phase compensation (no physical duration).
    Correction,
}

impl Stage {
    pub const PROTOCOL: [Stage; 8] = [
        Stage::PrepareA1,
        Stage::LoadModeA,
        Stage::PhaseGate,
        Stage::Split,
        Stage::UnloadModeA,
        Stage::Reencode,
        Stage::LoadModeB,
        Stage::CloneGate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::PrepareA1 => "prepare-a1",
            Stage::LoadModeA => "load-mode-a",
            Stage::PhaseGate => "phase-gate",
            Stage::Split => "split",
            Stage::UnloadModeA => "unload-mode-a",
            Stage::Reencode => "reencode",
            Stage::LoadModeB => "load-mode-b",
            Stage::CloneGate => "clone-gate",
            Stage::Correction => "correction",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleStep {
    pub pulse: Pulse,
    pub stage: Stage,
    /// Atom transit window the pulse happens in; `None` for pulses of
    /// negligible duration between cavity passages.
    pub window: Option<usize>,
    /// Seconds.
    pub duration: f64,
}

/// Ordered pulse program for one protocol variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub variant: ProtocolVariant,
    pub convention: JcConvention,
    pub n_max: usize,
    /// Duration of one transit window (seconds).
    pub window_duration: f64,
    pub steps: Vec<ScheduleStep>,
}

fn rabi(atom: usize, mode: usize, theta: f64, stage: Stage, window: usize, timing: &TimingModel) -> ScheduleStep {
    ScheduleStep {
        pulse: Pulse::Jc { atom, mode, theta },
        stage,
        window: Some(window),
        duration: timing.pulse_duration(theta),
    }
}

fn instant(pulse: Pulse, stage: Stage) -> ScheduleStep {
    ScheduleStep {
        pulse,
        stage,
        window: None,
        duration: 0.0,
    }
}

fn two_photon_pi(atom: usize) -> Pulse {
    Pulse::Classical {
        atom,
        transition: Transition::Ei,
        theta: PI,
        phase: 0.0,
    }
}

fn mixing(atom: usize) -> Pulse {
    Pulse::Mixing {
        atom,
        theta: ENCODING_MIX_THETA,
    }
}

/// A₂ needs `|+⟩ → |e⟩`, `|−⟩ → |g⟩` before writing into mode b: the
/// mixing pulse (its own inverse) takes `|±⟩` back to `|i⟩`/`|g⟩`, then the
/// two-photon pulse lifts `|i⟩` to `−|e⟩`. The sign cancels the `−` of the
/// idealized `|e,0⟩ → −|g,1⟩` transfer.
fn reencode_writer(atom: usize) -> [ScheduleStep; 2] {
    [
        instant(mixing(atom), Stage::Reencode),
        instant(two_photon_pi(atom), Stage::Reencode),
    ]
}

/// Clone atoms: `|e⟩ → |i⟩` then mixing, so `|g⟩ → |−⟩` and `|e⟩ → |+⟩`.
fn reencode_clone(atom: usize) -> [ScheduleStep; 2] {
    [
        instant(two_photon_pi(atom), Stage::Reencode),
        instant(mixing(atom), Stage::Reencode),
    ]
}

/// Builds the pulse program for `config` (including calibrated phase
/// corrections when requested for the physical convention).
pub fn build_schedule(config: &ProtocolConfig) -> Result<Schedule> {
    let timing = &config.timing;
    let prep_theta = match config.a1_preparation {
        A1Preparation::Standard => a1_preparation_theta(),
        A1Preparation::Equatorial => EQUATORIAL_PREPARATION_THETA,
    };
    let prep = instant(
        Pulse::Classical {
            atom: A1,
            transition: Transition::Ge,
            theta: prep_theta,
            phase: PREPARATION_PHASE,
        },
        Stage::PrepareA1,
    );
    let half_pi = PI / 2.0;
    let two_pi = 2.0 * PI;

    let mut steps = vec![prep];
    match config.variant {
        ProtocolVariant::TwoCavity => {
            steps.push(rabi(A1, MODE_A, PI, Stage::LoadModeA, 0, timing));
            steps.push(rabi(A2, MODE_A, two_pi, Stage::PhaseGate, 1, timing));
            steps.push(rabi(A3, MODE_A, half_pi, Stage::Split, 2, timing));
            steps.push(rabi(A4, MODE_A, PI, Stage::UnloadModeA, 3, timing));
            steps.extend(reencode_writer(A2));
            steps.extend(reencode_clone(A3));
            steps.extend(reencode_clone(A4));
            steps.push(rabi(A2, MODE_B, PI, Stage::LoadModeB, 4, timing));
            steps.push(rabi(A3, MODE_B, two_pi, Stage::CloneGate, 5, timing));
            steps.push(rabi(A4, MODE_B, two_pi, Stage::CloneGate, 6, timing));
        }
        ProtocolVariant::SingleCavity => {
            // one transit window per atom; each meets mode a, is detuned for
            // the classical pulses, then meets mode b
            steps.push(rabi(A1, MODE_A, PI, Stage::LoadModeA, 0, timing));
            steps.push(rabi(A2, MODE_A, two_pi, Stage::PhaseGate, 1, timing));
            steps.extend(reencode_writer(A2));
            steps.push(rabi(A2, MODE_B, PI, Stage::LoadModeB, 1, timing));
            steps.push(rabi(A3, MODE_A, half_pi, Stage::Split, 2, timing));
            steps.extend(reencode_clone(A3));
            steps.push(rabi(A3, MODE_B, two_pi, Stage::CloneGate, 2, timing));
            steps.push(rabi(A4, MODE_A, PI, Stage::UnloadModeA, 3, timing));
            steps.extend(reencode_clone(A4));
            steps.push(rabi(A4, MODE_B, two_pi, Stage::CloneGate, 3, timing));
        }
    }

    let mut schedule = Schedule {
        variant: config.variant,
        convention: config.convention,
        n_max: config.n_max,
        window_duration: timing.transit_time(),
        steps,
    };
    if config.corrections == Corrections::Calibrated {
        let corrections = derive_corrections(&schedule)?;
        schedule = schedule.with_corrections(&corrections);
    }
    schedule.check()?;
    Ok(schedule)
}

impl Schedule {
    /// Inserts phase-shift steps around the steps they refer to.
    pub fn with_corrections(&self, corrections: &[PhaseCorrection]) -> Schedule {
        let mut steps = Vec::with_capacity(self.steps.len() + corrections.len());
        let shift = |c: &PhaseCorrection| {
            instant(
                Pulse::PhaseShift {
                    atom: c.atom,
                    phases: c.phases,
                },
                Stage::Correction,
            )
        };
        for (k, step) in self.steps.iter().enumerate() {
            steps.extend(
                corrections
                    .iter()
                    .filter(|c| c.step == k && c.placement == Placement::Before)
                    .map(shift),
            );
            steps.push(*step);
            steps.extend(
                corrections
                    .iter()
                    .filter(|c| c.step == k && c.placement == Placement::After)
                    .map(shift),
            );
        }
        Schedule {
            steps,
            ..self.clone()
        }
    }

    /// Steps reference valid subsystems of the protocol register and every
    /// protocol stage is present.
    pub fn check(&self) -> Result<()> {
        let layout = protocol_layout(self.n_max)?;
        for step in &self.steps {
            step.pulse.matrix(&layout, self.convention)?;
            if step.duration < 0.0 {
                return Err(Error::InvalidParameter("negative step duration".into()));
            }
        }
        for stage in Stage::PROTOCOL {
            if !self.steps.iter().any(|s| s.stage == stage) {
                return Err(Error::Invariant(format!(
                    "schedule is missing stage {}",
                    stage.name()
                )));
            }
        }
        Ok(())
    }

    /// Indices of the last step of `stage`.
    pub fn last_index_of(&self, stage: Stage) -> Option<usize> {
        self.steps.iter().rposition(|s| s.stage == stage)
    }

    /// Number of driven pulses (phase corrections excluded).
    pub fn pulse_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.pulse.theta().is_some())
            .count()
    }

    /// Line-oriented dump, one step per line:
    /// `index kind targets theta/pi phase/pi duration_s stage`.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# variant={} convention={} n_max={}",
            variant_name(self.variant),
            convention_name(self.convention),
            self.n_max
        );
        let _ = writeln!(out, "# index kind targets theta/pi phase/pi duration_s stage");
        for (k, step) in self.steps.iter().enumerate() {
            let targets: Vec<&str> = step
                .pulse
                .targets()
                .iter()
                .map(|&t| SUBSYSTEM_LABELS[t])
                .collect();
            let theta = step
                .pulse
                .theta()
                .map(|t| format!("{:.6}", t / PI))
                .unwrap_or_else(|| "-".into());
            let phase = match step.pulse {
                Pulse::PhaseShift { phases, .. } => phases
                    .iter()
                    .map(|p| format!("{:.6}", p / PI))
                    .collect::<Vec<_>>()
                    .join("/"),
                _ => format!("{:.6}", step.pulse.phase() / PI),
            };
            let _ = writeln!(
                out,
                "{:02} {} {} {} {} {:.6e} {}",
                k,
                step.pulse.kind().name(),
                targets.join(","),
                theta,
                phase,
                step.duration,
                step.stage.name()
            );
        }
        out
    }
}

pub(crate) fn variant_name(v: ProtocolVariant) -> &'static str {
    match v {
        ProtocolVariant::TwoCavity => "two-cavity",
        ProtocolVariant::SingleCavity => "single-cavity",
    }
}

pub(crate) fn convention_name(c: JcConvention) -> &'static str {
    match c {
        JcConvention::Physical => "physical",
        JcConvention::Idealized => "idealized",
    }
}

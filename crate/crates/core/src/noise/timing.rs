use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::protocol::{Schedule, ScheduleStep, MODE_A, MODE_B, SUBSYSTEM_LABELS};
use crate::protocol::ProtocolVariant;
use crate::{Error, Result};

const ANGLE_SLACK: f64 = 1e-9;

/// Atomic beam and cavity parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimingModel {
    /// Single-photon Rabi frequency `Ω/2π`, Hz.
    pub rabi_freq: f64,
    /// Atomic velocity, m/s.
    pub velocity: f64,
    /// Length of beam path attributed to one transit window, m.
    pub transit_length: f64,
    /// Overrides `transit_length / velocity` when set, s.
    pub transit_time: Option<f64>,
    /// Effective interaction length inside the mode, m.
    pub coupling_length: f64,
    /// Idle time between consecutive transit windows, s.
    pub gap: f64,
    /// Cavity damping time used by the storage verdict, s.
    pub cavity_lifetime: f64,
    /// Largest admissible storage time as a fraction of `cavity_lifetime`.
    pub storage_fraction: f64,
    /// Frequency splitting of the two modes of one cavity, Hz.
    pub mode_splitting: f64,
    /// Smallest admissible `mode_splitting / rabi_freq`.
    pub min_splitting_ratio: f64,
}

impl Default for TimingModel {
    fn default() -> Self {
        Self {
            rabi_freq: 5e4,
            velocity: 500.0,
            transit_length: 0.025,
            transit_time: None,
            coupling_length: 0.01,
            gap: 0.0,
            cavity_lifetime: 1e-3,
            storage_fraction: 0.5,
            mode_splitting: 1.3e5,
            min_splitting_ratio: 2.0,
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
    }
}

impl TimingModel {
    pub fn validate(&self) -> Result<()> {
        positive("rabi_freq", self.rabi_freq)?;
        positive("velocity", self.velocity)?;
        positive("transit_length", self.transit_length)?;
        if let Some(t) = self.transit_time {
            positive("transit_time", t)?;
        }
        positive("coupling_length", self.coupling_length)?;
        if !(self.gap >= 0.0) || !self.gap.is_finite() {
            return Err(Error::InvalidParameter(format!("gap must be non-negative, got {}", self.gap)));
        }
        positive("cavity_lifetime", self.cavity_lifetime)?;
        positive("storage_fraction", self.storage_fraction)?;
        positive("mode_splitting", self.mode_splitting)?;
        positive("min_splitting_ratio", self.min_splitting_ratio)
    }

    pub fn transit_time(&self) -> f64 {
        self.transit_time.unwrap_or(self.transit_length / self.velocity)
    }

    /// Duration of a resonant pulse of vacuum Rabi angle `theta`.
    pub fn pulse_duration(&self, theta: f64) -> f64 {
        theta / (2.0 * PI * self.rabi_freq)
    }

    /// Largest vacuum Rabi angle one atom accumulates while crossing the mode.
    pub fn achievable_angle(&self) -> f64 {
        2.0 * PI * self.rabi_freq * self.coupling_length / self.velocity
    }

    /// Time covered by `windows` consecutive transit windows.
    pub fn span(&self, windows: usize) -> f64 {
        if windows == 0 {
            0.0
        } else {
            windows as f64 * self.transit_time() + (windows - 1) as f64 * self.gap
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepTiming {
    pub index: usize,
    pub kind: String,
    pub targets: String,
    pub theta: Option<f64>,
    pub window: Option<usize>,
    pub duration: f64,
}

/// Time a mode holds the stored qubit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeStorage {
    pub mode: String,
    /// First and last window (inclusive) in which the mode is loaded.
    pub first_window: usize,
    pub last_window: usize,
    pub seconds: f64,
}

/// One named feasibility constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub constraint: String,
    pub required: f64,
    pub limit: f64,
    pub feasible: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingReport {
    pub variant: ProtocolVariant,
    pub transit_time: f64,
    pub steps: Vec<StepTiming>,
    pub storage: Vec<ModeStorage>,
    /// Largest Rabi angle any atom needs within a single window.
    pub max_window_angle: f64,
    pub achievable_angle: f64,
    pub verdicts: Vec<Verdict>,
    pub feasible: bool,
}

impl TimingReport {
    pub fn storage_of(&self, mode: usize) -> Option<f64> {
        self.storage
            .iter()
            .find(|s| s.mode == SUBSYSTEM_LABELS[mode])
            .map(|s| s.seconds)
    }

    /// Constraints that fail.
    pub fn limiting(&self) -> Vec<&Verdict> {
        self.verdicts.iter().filter(|v| !v.feasible).collect()
    }
}

/// First and last window in which a JC pulse touches `mode`.
pub(crate) fn mode_windows(steps: &[ScheduleStep], mode: usize) -> Option<(usize, usize)> {
    let ws: Vec<usize> = steps
        .iter()
        .filter(|s| s.pulse.mode() == Some(mode))
        .filter_map(|s| s.window)
        .collect();
    Some((*ws.iter().min()?, *ws.iter().max()?))
}

/// Per-step durations, storage times and feasibility verdicts of `schedule`
/// under `timing`.
pub fn schedule_timing(timing: &TimingModel, schedule: &Schedule) -> Result<TimingReport> {
    timing.validate()?;
    let steps = schedule
        .steps
        .iter()
        .enumerate()
        .map(|(index, s)| StepTiming {
            index,
            kind: s.pulse.kind().name().to_string(),
            targets: s
                .pulse
                .targets()
                .iter()
                .map(|&t| SUBSYSTEM_LABELS[t])
                .collect::<Vec<_>>()
                .join(","),
            theta: s.pulse.theta(),
            window: s.window,
            duration: match (s.pulse, s.window) {
                (crate::gates::Pulse::Jc { theta, .. }, Some(_)) => timing.pulse_duration(theta),
                _ => 0.0,
            },
        })
        .collect();

    let storage: Vec<ModeStorage> = [MODE_A, MODE_B]
        .into_iter()
        .filter_map(|m| {
            mode_windows(&schedule.steps, m).map(|(first, last)| ModeStorage {
                mode: SUBSYSTEM_LABELS[m].to_string(),
                first_window: first,
                last_window: last,
                seconds: timing.span(last - first + 1),
            })
        })
        .collect();

    let max_window = schedule.steps.iter().filter_map(|s| s.window).max().unwrap_or(0);
    let max_window_angle = (0..=max_window)
        .map(|w| {
            schedule
                .steps
                .iter()
                .filter(|s| s.window == Some(w))
                .filter_map(|s| match s.pulse {
                    crate::gates::Pulse::Jc { theta, .. } => Some(theta),
                    _ => None,
                })
                .sum::<f64>()
        })
        .fold(0.0, f64::max);
    let achievable = timing.achievable_angle();

    let mut verdicts = vec![Verdict {
        constraint: "rabi-angle".into(),
        required: max_window_angle,
        limit: achievable,
        feasible: max_window_angle <= achievable * (1.0 + ANGLE_SLACK),
        detail: format!(
            "per-transit Rabi angle {:.4}π needed, {:.4}π available at {} m/s",
            max_window_angle / PI,
            achievable / PI,
            timing.velocity
        ),
    }];
    let longest = storage.iter().map(|s| s.seconds).fold(0.0, f64::max);
    let storage_limit = timing.storage_fraction * timing.cavity_lifetime;
    verdicts.push(Verdict {
        constraint: "storage".into(),
        required: longest,
        limit: storage_limit,
        feasible: longest <= storage_limit,
        detail: format!(
            "longest storage {longest:.4e} s against {storage_limit:.4e} s ({} of the {:.1e} s cavity lifetime)",
            timing.storage_fraction, timing.cavity_lifetime
        ),
    });
    if schedule.variant == ProtocolVariant::SingleCavity {
        let ratio = timing.mode_splitting / timing.rabi_freq;
        verdicts.push(Verdict {
            constraint: "mode-splitting".into(),
            required: timing.min_splitting_ratio,
            limit: ratio,
            feasible: ratio >= timing.min_splitting_ratio,
            detail: format!(
                "mode splitting {:.3e} Hz is {ratio:.3} times the Rabi frequency",
                timing.mode_splitting
            ),
        });
    }
    let feasible = verdicts.iter().all(|v| v.feasible);
    Ok(TimingReport {
        variant: schedule.variant,
        transit_time: timing.transit_time(),
        steps,
        storage,
        max_window_angle,
        achievable_angle: achievable,
        verdicts,
        feasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{build_schedule, ProtocolConfig};

    fn report(variant: ProtocolVariant, velocity: f64) -> TimingReport {
        let timing = TimingModel {
            velocity,
            ..TimingModel::default()
        };
        let cfg = ProtocolConfig {
            variant,
            timing,
            ..ProtocolConfig::default()
        };
        schedule_timing(&timing, &build_schedule(&cfg).unwrap()).unwrap()
    }

    #[test]
    fn default_storage() {
        let r = report(ProtocolVariant::TwoCavity, 500.0);
        assert!((r.transit_time - 5e-5).abs() < 1e-18);
        assert!((r.storage_of(MODE_A).unwrap() - 2e-4).abs() < 1e-15);
        assert!((r.storage_of(MODE_B).unwrap() - 1.5e-4).abs() < 1e-15);
        assert!(r.feasible);
    }

    #[test]
    fn single_cavity_verdicts() {
        let r = report(ProtocolVariant::SingleCavity, 330.0);
        assert!((r.max_window_angle - 3.0 * PI).abs() < 1e-12);
        assert!(r.feasible, "{:?}", r.verdicts);
        assert!(r.storage_of(MODE_A).unwrap() > 2e-4);

        let slow = report(ProtocolVariant::SingleCavity, 100.0);
        assert!(!slow.feasible);
        let names: Vec<&str> = slow.limiting().iter().map(|v| v.constraint.as_str()).collect();
        assert_eq!(names, ["storage"]);

        let fast = report(ProtocolVariant::SingleCavity, 500.0);
        assert_eq!(fast.limiting()[0].constraint, "rabi-angle");
    }

    #[test]
    fn pulse_durations() {
        let t = TimingModel::default();
        assert!((t.pulse_duration(2.0 * PI) - 2e-5).abs() < 1e-18);
        assert!((t.achievable_angle() - 2.0 * PI).abs() < 1e-12);
        assert!(TimingModel { velocity: -1.0, ..t }.validate().is_err());
    }
}

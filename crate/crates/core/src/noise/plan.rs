use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::model::{DampingMode, NoiseModel};
use super::timing::{mode_windows, TimingModel};
use crate::gates::Pulse;
use crate::protocol::{Schedule, MODE_A, MODE_B};

/// Over-rotations are drawn from a normal distribution cut at this many σ.
pub const TRUNCATION_SIGMAS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Event {
    Pulse { step: usize, pulse: Pulse },
    Damp { mode: usize, duration: f64 },
}

pub(crate) fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

pub(crate) fn truncated_normal(rng: &mut impl Rng) -> f64 {
    loop {
        let z: f64 = rng.sample(StandardNormal);
        if z.abs() <= TRUNCATION_SIGMAS {
            return z;
        }
    }
}

/// Angle factors `1 + σz` for every driven pulse (1 for phase corrections).
/// One `z` is drawn per driven pulse whatever `sigma` is, so runs at
/// different `sigma` share their random numbers.
pub(crate) fn angle_factors(schedule: &Schedule, sigma: f64, rng: &mut impl Rng) -> Vec<f64> {
    schedule
        .steps
        .iter()
        .map(|s| match s.pulse.theta() {
            Some(_) => {
                let z = truncated_normal(rng);
                1.0 + sigma * z
            }
            None => 1.0,
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
struct Chunk {
    anchor: usize,
    after: bool,
    mode: usize,
    duration: f64,
}

fn window_steps(schedule: &Schedule, w: usize) -> impl Iterator<Item = usize> + '_ {
    (0..schedule.steps.len()).filter(move |&k| schedule.steps[k].window == Some(w))
}

fn touching(schedule: &Schedule, w: usize, mode: usize) -> Option<usize> {
    window_steps(schedule, w).find(|&k| schedule.steps[k].pulse.mode() == Some(mode))
}

/// Damping chunks: the loading window contributes one transit after the
/// loading pulse, every later window `gap + transit` before the mode's
/// pulse, so the loaded-only total equals the storage span.
fn chunks(schedule: &Schedule, timing: &TimingModel, mode: usize, damping: DampingMode) -> Vec<Chunk> {
    let Some((loaded, readout)) = mode_windows(&schedule.steps, mode) else {
        return Vec::new();
    };
    let (first, last) = match damping {
        DampingMode::LoadedOnly => (loaded, readout),
        DampingMode::Always => (
            0,
            schedule.steps.iter().filter_map(|s| s.window).max().unwrap_or(0),
        ),
    };
    let transit = timing.transit_time();
    let mut out = Vec::new();
    for w in first..=last {
        let Some(last_in_window) = window_steps(schedule, w).last() else {
            continue;
        };
        let duration = if w == first { transit } else { timing.gap + transit };
        let chunk = match touching(schedule, w, mode) {
            Some(k) if w == loaded => Chunk { anchor: k, after: true, mode, duration },
            Some(k) => Chunk { anchor: k, after: false, mode, duration },
            None => Chunk { anchor: last_in_window, after: true, mode, duration },
        };
        out.push(chunk);
    }
    out
}

/// Pulses (scaled by `factors`) interleaved with damping periods.
pub(crate) fn events(
    schedule: &Schedule,
    timing: &TimingModel,
    noise: Option<&NoiseModel>,
    factors: &[f64],
) -> Vec<Event> {
    let all: Vec<Chunk> = match noise {
        Some(n) if n.cavity_t1.is_finite() => [MODE_A, MODE_B]
            .into_iter()
            .flat_map(|m| chunks(schedule, timing, m, n.damping))
            .collect(),
        _ => Vec::new(),
    };
    let damp = |c: &Chunk| Event::Damp {
        mode: c.mode,
        duration: c.duration,
    };
    let mut out = Vec::with_capacity(schedule.steps.len() + all.len());
    for (k, step) in schedule.steps.iter().enumerate() {
        out.extend(all.iter().filter(|c| c.anchor == k && !c.after).map(damp));
        out.push(Event::Pulse {
            step: k,
            pulse: step.pulse.with_scaled_angle(factors[k]),
        });
        out.extend(all.iter().filter(|c| c.anchor == k && c.after).map(damp));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{build_schedule, ProtocolConfig, ProtocolVariant};

    fn damped_time(variant: ProtocolVariant, mode: usize, damping: DampingMode) -> f64 {
        let cfg = ProtocolConfig {
            variant,
            ..ProtocolConfig::default()
        };
        let s = build_schedule(&cfg).unwrap();
        let noise = NoiseModel {
            damping,
            ..NoiseModel::default()
        };
        events(&s, &cfg.timing, Some(&noise), &vec![1.0; s.steps.len()])
            .iter()
            .map(|e| match e {
                Event::Damp { mode: m, duration } if *m == mode => *duration,
                _ => 0.0,
            })
            .sum()
    }

    #[test]
    fn damping_time_matches_storage() {
        for v in [ProtocolVariant::TwoCavity, ProtocolVariant::SingleCavity] {
            assert!((damped_time(v, MODE_A, DampingMode::LoadedOnly) - 2e-4).abs() < 1e-15);
        }
        assert!((damped_time(ProtocolVariant::TwoCavity, MODE_B, DampingMode::LoadedOnly) - 1.5e-4).abs() < 1e-15);
        assert!((damped_time(ProtocolVariant::TwoCavity, MODE_B, DampingMode::Always) - 3.5e-4).abs() < 1e-15);
    }

    #[test]
    fn loading_pulse_precedes_its_damping() {
        let cfg = ProtocolConfig::default();
        let s = build_schedule(&cfg).unwrap();
        let ev = events(&s, &cfg.timing, Some(&NoiseModel::default()), &vec![1.0; s.steps.len()]);
        let first_damp = ev.iter().position(|e| matches!(e, Event::Damp { .. })).unwrap();
        assert!(matches!(ev[first_damp - 1], Event::Pulse { step: 1, .. }));
    }

    #[test]
    fn factors_share_random_numbers() {
        let s = build_schedule(&ProtocolConfig::default()).unwrap();
        let a = angle_factors(&s, 0.05, &mut trial_rng(7, 3));
        let b = angle_factors(&s, 0.10, &mut trial_rng(7, 3));
        for (x, y) in a.iter().zip(&b) {
            assert!(((y - 1.0) - 2.0 * (x - 1.0)).abs() < 1e-15);
        }
        let zero = angle_factors(&s, 0.0, &mut trial_rng(7, 3));
        assert!(zero.iter().all(|&f| f == 1.0));
        let other = angle_factors(&s, 0.05, &mut trial_rng(7, 4));
        assert_ne!(a, other);
    }
}

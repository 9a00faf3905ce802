use serde::{Deserialize, Serialize};

use super::channel::{damping_channel, damping_probability};
use super::model::NoiseModel;
use super::plan::{angle_factors, events, trial_rng, Event, TRUNCATION_SIGMAS};
use crate::protocol::{
    build_schedule, initial_locals, initial_state, execute_pure, protocol_layout, Engine, ProtocolConfig, A3, A4,
};
use crate::quantum::{DensityState, LocalOperator, PureState, RegisterLayout, Vector};
use crate::{Error, Result};

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Mean and standard error of the mean.
pub(crate) fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mut s = CompensatedSum::default();
    xs.iter().for_each(|&x| s.add(x));
    let mean = s.value() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let mut v = CompensatedSum::default();
    xs.iter().for_each(|&x| v.add((x - mean) * (x - mean)));
    (mean, (v.value() / (n - 1.0)).sqrt() / n.sqrt())
}

/// Monte Carlo estimate of the clone fidelities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoisyResult {
    pub trials: usize,
    pub mean_f3: f64,
    pub mean_f4: f64,
    pub stderr_f3: f64,
    pub stderr_f4: f64,
    /// Largest `|tr ρ₃₄ − 1|` over trials.
    pub max_trace_error: f64,
    /// Smallest eigenvalue of any `ρ₃₄`.
    pub min_eigenvalue: f64,
}

/// Density matrix that only carries subsystems between their first and
/// last use, keeping the clone atoms to the end.
struct LazyDensity<'a> {
    full: &'a RegisterLayout,
    locals: Vec<Vector>,
    present: Vec<usize>,
    rho: Option<DensityState>,
}

impl<'a> LazyDensity<'a> {
    fn position(&self, k: usize) -> Option<usize> {
        self.present.iter().position(|&p| p == k)
    }

    fn ensure(&mut self, k: usize) -> Result<usize> {
        if let Some(p) = self.position(k) {
            return Ok(p);
        }
        let layout = self.full.sub_layout(&[k])?;
        let local = PureState::new(layout, self.locals[k].clone())?.to_density();
        self.rho = Some(match self.rho.take() {
            Some(r) => r.tensor(&local)?,
            None => local,
        });
        self.present.push(k);
        Ok(self.present.len() - 1)
    }

    fn discard(&mut self, k: usize) -> Result<()> {
        let Some(p) = self.position(k) else {
            return Ok(());
        };
        let keep: Vec<usize> = (0..self.present.len()).filter(|&q| q != p).collect();
        let rho = self.rho.take().expect("present subsystems imply a state");
        self.rho = Some(rho.partial_trace(&keep)?);
        self.present.remove(p);
        Ok(())
    }
}

/// Final `ρ₃₄` (A₃ then A₄) of one trajectory of `events`.
fn run_lazy(config: &ProtocolConfig, full: &RegisterLayout, evs: &[Event], t1: f64) -> Result<DensityState> {
    let mut last_use = [None; 6];
    for (i, ev) in evs.iter().enumerate() {
        if let Event::Pulse { pulse, .. } = ev {
            for t in pulse.targets() {
                last_use[t] = Some(i);
            }
        }
    }
    let mut lazy = LazyDensity {
        full,
        locals: initial_locals(config),
        present: Vec::new(),
        rho: None,
    };
    for (i, ev) in evs.iter().enumerate() {
        match *ev {
            Event::Pulse { pulse, .. } => {
                let m = pulse.matrix(full, config.convention)?;
                let mut targets = Vec::new();
                for t in pulse.targets() {
                    targets.push(lazy.ensure(t)?);
                }
                let op = LocalOperator::unitary(targets, m)?;
                lazy.rho.as_mut().expect("ensured").apply(&op)?;
            }
            Event::Damp { mode, duration } => {
                let gamma = damping_probability(duration, t1);
                if let (Some(p), true) = (lazy.position(mode), gamma > 0.0) {
                    let op = damping_channel(p, full.dim(mode), gamma)?;
                    lazy.rho.as_mut().expect("present").apply(&op)?;
                }
            }
        }
        for k in 0..6 {
            if last_use[k] == Some(i) && k != A3 && k != A4 {
                lazy.discard(k)?;
            }
        }
    }
    let p3 = lazy.ensure(A3)?;
    let p4 = lazy.ensure(A4)?;
    lazy.rho.expect("clone atoms present").partial_trace(&[p3, p4])
}

/// Averages the clone fidelities over `noise.trials` trajectories, each with
/// its own pulse errors and the deterministic cavity damping.
pub fn noisy_run(config: &ProtocolConfig, noise: &NoiseModel) -> Result<NoisyResult> {
    if config.engine != Engine::Density {
        return Err(Error::InvalidParameter(
            "noisy runs require the density engine".into(),
        ));
    }
    noise.validate()?;
    let config = ProtocolConfig {
        noise: Some(*noise),
        ..config.clone()
    };
    config.validate()?;
    let schedule = build_schedule(&config)?;
    let full = protocol_layout(config.n_max)?;
    let target = config.input.atom_vector();
    let mut f3 = Vec::with_capacity(noise.trials);
    let mut f4 = Vec::with_capacity(noise.trials);
    let mut max_trace_error = 0.0f64;
    let mut min_eigenvalue = f64::INFINITY;
    for trial in 0..noise.trials {
        let factors = angle_factors(&schedule, noise.pulse_sigma, &mut trial_rng(noise.seed, trial));
        let evs = events(&schedule, &config.timing, Some(noise), &factors);
        let rho34 = run_lazy(&config, &full, &evs, noise.cavity_t1)?;
        max_trace_error = max_trace_error.max((rho34.trace() - 1.0).norm());
        min_eigenvalue = min_eigenvalue.min(rho34.min_eigenvalue());
        f3.push(rho34.partial_trace(&[0])?.expectation(&target)?);
        f4.push(rho34.partial_trace(&[1])?.expectation(&target)?);
    }
    let (mean_f3, stderr_f3) = mean_and_stderr(&f3);
    let (mean_f4, stderr_f4) = mean_and_stderr(&f4);
    Ok(NoisyResult {
        trials: noise.trials,
        mean_f3,
        mean_f4,
        stderr_f3,
        stderr_f4,
        max_trace_error,
        min_eigenvalue,
    })
}

/// `E[cos²(πε/2)]` for `ε = σz`, `z` standard normal truncated at
/// ±[`TRUNCATION_SIGMAS`]: mean overlap of a π pulse with its over-rotated
/// version.
pub fn pulse_fidelity_from_sigma(sigma: f64) -> Result<f64> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidParameter(format!("sigma must be non-negative, got {sigma}")));
    }
    let n = 4000;
    let h = 2.0 * TRUNCATION_SIGMAS / n as f64;
    let (mut num, mut den) = (CompensatedSum::default(), CompensatedSum::default());
    for k in 0..=n {
        let z = -TRUNCATION_SIGMAS + k as f64 * h;
        let w = if k == 0 || k == n {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let pdf = (-0.5 * z * z).exp();
        let c = (0.5 * std::f64::consts::PI * sigma * z).cos();
        num.add(w * pdf * c * c);
        den.add(w * pdf);
    }
    Ok(num.value() / den.value())
}

/// Multiplicative budget `f^n` against simulated state overlaps under pulse
/// over-rotations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BudgetComparison {
    pub sigma: f64,
    pub per_pulse_fidelity: f64,
    pub pulses: usize,
    pub multiplicative: f64,
    /// Mean of `|⟨ideal|noisy⟩|²` over trials.
    pub simulated: f64,
    pub simulated_stderr: f64,
    pub trials: usize,
    /// `simulated − multiplicative`.
    pub discrepancy: f64,
}

pub fn budget_comparison(config: &ProtocolConfig, sigma: f64, trials: usize, seed: u64) -> Result<BudgetComparison> {
    let f = pulse_fidelity_from_sigma(sigma)?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let config = ProtocolConfig {
        noise: None,
        engine: Engine::Pure,
        ..config.clone()
    };
    config.validate()?;
    let schedule = build_schedule(&config)?;
    let pulses = schedule.steps.iter().filter(|s| s.pulse.theta().is_some()).count();
    let ideal_events = events(&schedule, &config.timing, None, &vec![1.0; schedule.steps.len()]);
    let mut ideal = initial_state(&config)?;
    execute_pure(&mut ideal, &ideal_events, config.convention)?;
    let overlaps = (0..trials)
        .map(|trial| {
            let factors = angle_factors(&schedule, sigma, &mut trial_rng(seed, trial));
            let evs = events(&schedule, &config.timing, None, &factors);
            let mut psi = initial_state(&config)?;
            execute_pure(&mut psi, &evs, config.convention)?;
            Ok(ideal.inner(&psi)?.norm_sqr())
        })
        .collect::<Result<Vec<f64>>>()?;
    let (simulated, simulated_stderr) = mean_and_stderr(&overlaps);
    let multiplicative = f.powi(pulses as i32);
    Ok(BudgetComparison {
        sigma,
        per_pulse_fidelity: f,
        pulses,
        multiplicative,
        simulated,
        simulated_stderr,
        trials,
        discrepancy: simulated - multiplicative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::{run_protocol, ProtocolVariant, QubitInput};

    #[test]
    fn compensated_sum() {
        let mut s = CompensatedSum::default();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
        assert_eq!(mean_and_stderr(&[2.0, 4.0]), (3.0, 1.0));
    }

    #[test]
    fn lazy_engine_matches_full_density() {
        for variant in [ProtocolVariant::TwoCavity, ProtocolVariant::SingleCavity] {
            let noise = NoiseModel {
                pulse_sigma: 0.07,
                trials: 1,
                seed: 5,
                ..NoiseModel::default()
            };
            let cfg = ProtocolConfig {
                variant,
                engine: Engine::Density,
                noise: Some(noise),
                ..ProtocolConfig::default()
            }
            .with_input(QubitInput::from_bloch_angles(1.2, 0.4));
            let (_, full) = run_protocol(&cfg).unwrap();
            let lazy = noisy_run(&cfg, &noise).unwrap();
            assert!((full.f3 - lazy.mean_f3).abs() < 1e-12, "{} vs {}", full.f3, lazy.mean_f3);
            assert!((full.f4 - lazy.mean_f4).abs() < 1e-12);
        }
    }

    #[test]
    fn sigma_to_fidelity() {
        assert_eq!(pulse_fidelity_from_sigma(0.0).unwrap(), 1.0);
        let f = pulse_fidelity_from_sigma(0.05).unwrap();
        // small-angle expansion 1 − (πσ/2)²
        let approx = 1.0 - (std::f64::consts::PI * 0.05 / 2.0).powi(2);
        assert!((f - approx).abs() < 1e-4);
        assert!(pulse_fidelity_from_sigma(0.1).unwrap() < f);
    }
}

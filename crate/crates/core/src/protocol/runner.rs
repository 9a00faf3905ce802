use super::config::{protocol_layout, Engine, ProtocolConfig, A1, A2, A3, A4, MODE_A, MODE_B};
use super::oracle::{ancilla_analysis, expected_output_with};
use super::report::{CloneReport, TimingSummary};
use super::schedule::{build_schedule, Schedule};
use crate::gates::{JcConvention, Pulse};
use crate::noise::{angle_factors, damping_channel, damping_probability, events, schedule_timing, trial_rng, Event};
use crate::quantum::{
    bloch_vector, product_state, qubit_reduce, DensityState, PureState, QubitBasis, RegisterLayout, Vector,
    C64, DEFAULT_LEAKAGE_TOLERANCE,
};
use crate::{Error, Result};

/// Normalisation drift tolerated at the end of a run.
const NORM_TOL: f64 = 1e-10;

pub const PLUS_MINUS_EMBEDDING: &str = "clone qubit |0>=|+>, |1>=|-> with |+-> = (|i> +- |g>)/sqrt2";

#[derive(Debug, Clone, PartialEq)]
pub enum FinalState {
    Pure(PureState),
    Density(DensityState),
}

impl FinalState {
    pub fn layout(&self) -> &RegisterLayout {
        match self {
            FinalState::Pure(p) => p.layout(),
            FinalState::Density(d) => d.layout(),
        }
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityState> {
        match self {
            FinalState::Pure(p) => p.partial_trace(keep),
            FinalState::Density(d) => d.partial_trace(keep),
        }
    }

    pub fn population(&self, pred: impl Fn(&[usize]) -> bool) -> f64 {
        match self {
            FinalState::Pure(p) => p.population(pred),
            FinalState::Density(d) => d.population(pred),
        }
    }

    /// `|⟨target|ψ⟩|`, or `√⟨target|ρ|target⟩`.
    pub fn overlap_with(&self, target: &PureState) -> Result<f64> {
        match self {
            FinalState::Pure(p) => Ok(target.inner(p)?.norm()),
            FinalState::Density(d) => {
                if d.layout() != target.layout() {
                    return Err(Error::InvalidRegister("layouts differ".into()));
                }
                Ok(d.expectation(target.amplitudes())?.max(0.0).sqrt())
            }
        }
    }

    pub fn as_pure(&self) -> Option<&PureState> {
        match self {
            FinalState::Pure(p) => Some(p),
            FinalState::Density(_) => None,
        }
    }
}

fn basis(dim: usize, k: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[k] = C64::new(1.0, 0.0);
    v
}

/// Local initial states in register order: A₂ holds the input, everything
/// else is in `|g⟩` or vacuum.
pub(crate) fn initial_locals(config: &ProtocolConfig) -> Vec<Vector> {
    let g = basis(3, 0);
    let vac = basis(config.n_max + 1, 0);
    vec![g.clone(), config.input.atom_vector(), g.clone(), g, vac.clone(), vac]
}

pub(crate) fn initial_state(config: &ProtocolConfig) -> Result<PureState> {
    product_state(&protocol_layout(config.n_max)?, &initial_locals(config))
}

pub(crate) fn pulse_operator(
    pulse: &Pulse,
    layout: &RegisterLayout,
    convention: JcConvention,
) -> Result<crate::quantum::LocalOperator> {
    pulse.operator(layout, convention)
}

/// Executes the pulses of `events` (damping is ignored).
pub(crate) fn execute_pure(psi: &mut PureState, events: &[Event], convention: JcConvention) -> Result<()> {
    let layout = psi.layout().clone();
    for ev in events {
        if let Event::Pulse { pulse, .. } = ev {
            psi.apply(&pulse_operator(pulse, &layout, convention)?)?;
        }
    }
    Ok(())
}

pub(crate) fn execute_density(
    rho: &mut DensityState,
    events: &[Event],
    convention: JcConvention,
    cavity_t1: f64,
) -> Result<()> {
    let layout = rho.layout().clone();
    for ev in events {
        match *ev {
            Event::Pulse { pulse, .. } => rho.apply(&pulse_operator(&pulse, &layout, convention)?)?,
            Event::Damp { mode, duration } => {
                let gamma = damping_probability(duration, cavity_t1);
                if gamma > 0.0 {
                    rho.apply(&damping_channel(mode, layout.dim(mode), gamma)?)?;
                }
            }
        }
    }
    Ok(())
}

/// Runs the schedule of `config`. With a noise model, pulse errors are
/// drawn from trial 0 of its seed.
pub fn run_protocol(config: &ProtocolConfig) -> Result<(FinalState, CloneReport)> {
    config.validate()?;
    let schedule = build_schedule(config)?;
    let factors = match &config.noise {
        Some(n) => angle_factors(&schedule, n.pulse_sigma, &mut trial_rng(n.seed, 0)),
        None => vec![1.0; schedule.steps.len()],
    };
    let evs = events(&schedule, &config.timing, config.noise.as_ref(), &factors);
    let mut psi = initial_state(config)?;
    let state = match config.engine {
        Engine::Pure => {
            execute_pure(&mut psi, &evs, config.convention)?;
            let norm = psi.norm();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::Invariant(format!("final state norm {norm} drifted from 1")));
            }
            FinalState::Pure(psi)
        }
        Engine::Density => {
            let mut rho = psi.to_density();
            let t1 = config.noise.map_or(f64::INFINITY, |n| n.cavity_t1);
            execute_density(&mut rho, &evs, config.convention, t1)?;
            let tr = rho.trace();
            if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
                return Err(Error::Invariant(format!("final trace {tr} drifted from 1")));
            }
            FinalState::Density(rho)
        }
    };
    let report = clone_report(config, &state, &schedule)?;
    Ok((state, report))
}

/// Noise-free pure run keeping the state after every schedule step.
pub fn run_pure_traced(config: &ProtocolConfig) -> Result<(Schedule, Vec<PureState>)> {
    let config = ProtocolConfig {
        noise: None,
        engine: Engine::Pure,
        ..config.clone()
    };
    config.validate()?;
    let schedule = build_schedule(&config)?;
    let layout = protocol_layout(config.n_max)?;
    let mut psi = initial_state(&config)?;
    let mut out = Vec::with_capacity(schedule.steps.len());
    for step in &schedule.steps {
        psi.apply(&step.pulse.operator(&layout, config.convention)?)?;
        out.push(psi.clone());
    }
    Ok((schedule, out))
}

fn ground_population(state: &FinalState, k: usize) -> f64 {
    state.population(|d| d[k] == 0)
}

/// Fidelities, Bloch vectors and structure checks of a final state.
pub fn clone_report(config: &ProtocolConfig, state: &FinalState, schedule: &Schedule) -> Result<CloneReport> {
    let ideal = config.is_ideal();
    let tolerance = if ideal { DEFAULT_LEAKAGE_TOLERANCE } else { 1.0 };
    let target = config.input.atom_vector();
    let rho3 = state.partial_trace(&[A3])?;
    let rho4 = state.partial_trace(&[A4])?;
    let q3 = qubit_reduce(&rho3, QubitBasis::Ig, tolerance)?;
    let q4 = qubit_reduce(&rho4, QubitBasis::Ig, tolerance)?;
    let photons = state.population(|d| d[MODE_A] >= 2 || d[MODE_B] >= 2);
    let leakage = q3.leakage.max(q4.leakage).max(photons);
    if ideal && leakage > tolerance {
        return Err(Error::Leakage { leakage, tolerance });
    }
    let expected = expected_output_with(config.input, config.a1_preparation, config.n_max)?;
    let ancilla_overlap = match state.as_pure() {
        Some(p) => Some(ancilla_analysis(p)?.overlap),
        None => None,
    };
    let timing = schedule_timing(&config.timing, schedule)?;
    Ok(CloneReport {
        f3: rho3.expectation(&target)?,
        f4: rho4.expectation(&target)?,
        bloch_in: config.input.bloch(),
        bloch3: bloch_vector(&q3.rho),
        bloch4: bloch_vector(&q4.rho),
        ancilla_overlap,
        leakage,
        oracle_overlap: state.overlap_with(&expected)?,
        a1_ground: ground_population(state, A1),
        a2_ground: ground_population(state, A2),
        mode_a_vacuum: ground_population(state, MODE_A),
        qubit_embedding: PLUS_MINUS_EMBEDDING.to_string(),
        timing: TimingSummary {
            transit_time: timing.transit_time,
            storage_mode_a: timing.storage_of(MODE_A).unwrap_or(0.0),
            storage_mode_b: timing.storage_of(MODE_B).unwrap_or(0.0),
            feasible: timing.feasible,
            limiting: timing.limiting().iter().map(|v| v.constraint.clone()).collect(),
        },
    })
}

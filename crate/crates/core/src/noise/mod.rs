//! Cavity damping, pulse over-rotation Monte Carlo, fidelity bounds and
//! budget arithmetic, and the beam timing calculator.

mod bounds;
mod channel;
mod model;
mod montecarlo;
mod plan;
mod timing;

pub use bounds::{
    maximally_mixed_overlap, precision_requirement, process_fidelity_budget, pulse_fidelity_threshold,
    trivial_baseline, uqcm_fidelity_bound,
};
pub use channel::{damping_channel, damping_kraus, damping_probability};
pub use model::{DampingMode, NoiseModel};
pub use montecarlo::{budget_comparison, noisy_run, pulse_fidelity_from_sigma, BudgetComparison, NoisyResult};
pub use plan::TRUNCATION_SIGMAS;
pub(crate) use plan::{angle_factors, events, trial_rng, Event};
pub use timing::{schedule_timing, ModeStorage, StepTiming, TimingModel, TimingReport, Verdict};

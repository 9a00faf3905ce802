use std::time::Instant;

use uqcm::noise::{budget_comparison, noisy_run, DampingMode, NoiseModel};
use uqcm::protocol::{Engine, ProtocolConfig, ProtocolVariant, QubitInput};

const FIVE_SIXTHS: f64 = 5.0 / 6.0;

fn density() -> ProtocolConfig {
    ProtocolConfig {
        engine: Engine::Density,
        ..ProtocolConfig::default()
    }
    .with_input(QubitInput::from_bloch_angles(1.0, 0.5))
}

fn noise(t1: f64, sigma: f64, trials: usize) -> NoiseModel {
    NoiseModel {
        cavity_t1: t1,
        pulse_sigma: sigma,
        trials,
        seed: 42,
        damping: DampingMode::LoadedOnly,
    }
}

#[test]
fn noiseless_limit() {
    for variant in [ProtocolVariant::TwoCavity, ProtocolVariant::SingleCavity] {
        let cfg = ProtocolConfig { variant, ..density() };
        let r = noisy_run(&cfg, &noise(f64::INFINITY, 0.0, 3)).unwrap();
        assert!((r.mean_f3 - FIVE_SIXTHS).abs() < 1e-10);
        assert!((r.mean_f4 - FIVE_SIXTHS).abs() < 1e-10);
        assert!(r.stderr_f3 < 1e-12);
        let big = noisy_run(&cfg, &noise(1e9, 0.0, 1)).unwrap();
        assert!((big.mean_f3 - FIVE_SIXTHS).abs() < 1e-10);
    }
}

#[test]
fn damping_lowers_fidelity_monotonically() {
    let mut last = 0.0;
    for t1 in [2e-4, 5e-4, 1e-3, 5e-3, 5e-2] {
        let r = noisy_run(&density(), &noise(t1, 0.0, 1)).unwrap();
        assert!(r.mean_f3 < FIVE_SIXTHS);
        assert!(r.mean_f3 >= last - 1e-10, "T1 {t1}: {} < {last}", r.mean_f3);
        assert!(r.max_trace_error < 1e-10 && r.min_eigenvalue > -1e-8);
        last = r.mean_f3;
    }
    let always = noisy_run(
        &density(),
        &NoiseModel {
            damping: DampingMode::Always,
            ..noise(1e-3, 0.0, 1)
        },
    )
    .unwrap();
    let loaded = noisy_run(&density(), &noise(1e-3, 0.0, 1)).unwrap();
    assert!(always.mean_f3 <= loaded.mean_f3 + 1e-10);
}

#[test]
fn pulse_errors_lower_fidelity() {
    let mut last = f64::INFINITY;
    let mut last4 = f64::INFINITY;
    for sigma in [0.0, 0.03, 0.05, 0.07, 0.1] {
        let r = noisy_run(&density(), &noise(f64::INFINITY, sigma, 200)).unwrap();
        assert!(r.mean_f3 <= last + 1e-10, "sigma {sigma}");
        assert!(r.mean_f4 <= last4 + 1e-10, "sigma {sigma}");
        last = r.mean_f3;
        last4 = r.mean_f4;
    }
}

#[test]
fn seeded_runs_repeat_exactly() {
    let a = noisy_run(&density(), &noise(1e-3, 0.05, 20)).unwrap();
    let b = noisy_run(&density(), &noise(1e-3, 0.05, 20)).unwrap();
    assert_eq!(a, b);
    let c = noisy_run(&density(), &NoiseModel { seed: 43, ..noise(1e-3, 0.05, 20) }).unwrap();
    assert_ne!(a.mean_f3, c.mean_f3);
}

#[test]
fn invalid_noise() {
    assert!(noisy_run(&ProtocolConfig::default(), &noise(1e-3, 0.0, 1)).is_err());
    assert!(noisy_run(&density(), &noise(1e-3, 0.0, 0)).is_err());
    assert!(noisy_run(&density(), &noise(-1.0, 0.0, 1)).is_err());
    assert!(noisy_run(&density(), &noise(1e-3, -0.1, 1)).is_err());
}

#[test]
fn two_hundred_trials_are_fast() {
    let start = Instant::now();
    let r = noisy_run(&density(), &noise(1e-3, 0.05, 200)).unwrap();
    assert!(start.elapsed().as_secs_f64() < 60.0);
    assert_eq!(r.trials, 200);
    assert!(r.stderr_f3 > 0.0);
}

#[test]
fn budget_is_reported() {
    let b = budget_comparison(&ProtocolConfig::default(), 0.05, 50, 1).unwrap();
    assert_eq!(b.pulses, 14);
    assert!((b.multiplicative - b.per_pulse_fidelity.powi(14)).abs() < 1e-15);
    assert!(b.simulated > 0.0 && b.simulated <= 1.0);
    let zero = budget_comparison(&ProtocolConfig::default(), 0.0, 3, 1).unwrap();
    assert!((zero.simulated - 1.0).abs() < 1e-12 && zero.multiplicative == 1.0);
}

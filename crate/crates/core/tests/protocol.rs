mod common;

use common::{after_phase_gate, after_split, after_unload, after_write, c, input_set};
use uqcm::gates::{calibrate_phases, JcConvention};
use uqcm::protocol::{
    ancilla_analysis, build_schedule, equatorial_run, expected_output, prepare_blank, protocol_layout, run_protocol,
    run_pure_traced, Corrections, Engine, ProtocolConfig, ProtocolVariant, QubitInput, Stage, A3, A4, MODE_A,
};
use uqcm::quantum::{max_abs_diff, PureState, C64};

const FIVE_SIXTHS: f64 = 5.0 / 6.0;

fn run(cfg: &ProtocolConfig) -> (PureState, uqcm::protocol::CloneReport) {
    let (state, report) = run_protocol(cfg).unwrap();
    (state.as_pure().unwrap().clone(), report)
}

#[test]
fn optimal_and_universal() {
    for variant in [ProtocolVariant::TwoCavity, ProtocolVariant::SingleCavity] {
        for (name, input) in input_set(16) {
            let cfg = ProtocolConfig {
                variant,
                ..ProtocolConfig::default()
            }
            .with_input(input);
            let (psi, r) = run(&cfg);
            assert!((r.f3 - FIVE_SIXTHS).abs() < 1e-10, "{name}");
            assert!((r.f4 - FIVE_SIXTHS).abs() < 1e-10, "{name}");
            let target = expected_output(input, 2).unwrap();
            assert!((target.inner(&psi).unwrap() - c(1.0)).norm() < 1e-10, "{name}");
            for k in 0..3 {
                assert!((r.bloch3[k] - 2.0 / 3.0 * r.bloch_in[k]).abs() < 1e-10);
                assert!((r.bloch4[k] - r.bloch3[k]).abs() < 1e-12);
            }
            assert!(r.leakage < 1e-12);
        }
    }
}

#[test]
fn intermediate_states_follow_the_textbook_sequence() {
    for (name, input) in input_set(4) {
        let (schedule, states) = run_pure_traced(&ProtocolConfig::default().with_input(input)).unwrap();
        let at = |stage: Stage| &states[schedule.last_index_of(stage).unwrap()];
        let checks = [
            (Stage::PhaseGate, after_phase_gate(input)),
            (Stage::Split, after_split(input)),
            (Stage::UnloadModeA, after_unload(input)),
            (Stage::LoadModeB, after_write(input)),
        ];
        for (stage, want) in checks {
            let diff = (want.amplitudes() - at(stage).amplitudes())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-10, "{name} {stage:?}: {diff}");
        }
    }
}

#[test]
fn mode_a_populations_along_the_schedule() {
    let (schedule, states) = run_pure_traced(&ProtocolConfig::default()).unwrap();
    let load = schedule.last_index_of(Stage::LoadModeA).unwrap();
    let rho = states[load].partial_trace(&[MODE_A]).unwrap();
    let m = rho.matrix();
    assert!((m[[0, 0]].re - 2.0 / 3.0).abs() < 1e-12 && (m[[1, 1]].re - 1.0 / 3.0).abs() < 1e-12);
    let unload = schedule.last_index_of(Stage::UnloadModeA).unwrap();
    let rho = states[unload].partial_trace(&[MODE_A]).unwrap();
    assert!((rho.matrix()[[0, 0]].re - 1.0).abs() < 1e-12);
}

#[test]
fn ancilla_structure() {
    for (name, input) in input_set(8) {
        let (psi, _) = run(&ProtocolConfig::default().with_input(input));
        let a = ancilla_analysis(&psi).unwrap();
        assert!(a.overlap < 1e-12, "{name}");
        assert!(a.a1_ground > 1.0 - 1e-12 && a.a2_ground > 1.0 - 1e-12 && a.mode_a_vacuum > 1.0 - 1e-12);
        let r3 = psi.partial_trace(&[A3]).unwrap();
        let r4 = psi.partial_trace(&[A4]).unwrap();
        assert!(max_abs_diff(r3.matrix(), r4.matrix()) < 1e-12);
    }
}

#[test]
fn expected_output_structure() {
    let plus = expected_output(QubitInput::plus(), 2).unwrap();
    let mut nonzero: Vec<f64> = plus.amplitudes().iter().map(|z| z.norm()).filter(|&x| x > 1e-14).collect();
    nonzero.sort_by(f64::total_cmp);
    // |++⟩ and |Φ⟩ expanded in the {i, g} product basis
    assert!(nonzero.len() >= 5);
    let minus = expected_output(QubitInput::minus(), 2).unwrap();
    let brute: C64 = plus
        .amplitudes()
        .iter()
        .zip(minus.amplitudes().iter())
        .map(|(a, b)| a.conj() * b)
        .sum();
    assert!((plus.inner(&minus).unwrap() - brute).norm() < 1e-15);
    let (psi_plus, _) = run(&ProtocolConfig::default());
    let (psi_minus, _) = run(&ProtocolConfig::default().with_input(QubitInput::minus()));
    assert!((psi_plus.inner(&psi_minus).unwrap() - brute).norm() < 1e-12);
    assert!(expected_output(QubitInput { alpha: c(1.0), beta: c(1.0) }, 2).is_err());
}

#[test]
fn output_is_linear_in_the_input() {
    let q = QubitInput::from_bloch_angles(2.1, 0.3);
    let (a, _) = run(&ProtocolConfig::default().with_input(q));
    let (p, _) = run(&ProtocolConfig::default());
    let (m, _) = run(&ProtocolConfig::default().with_input(QubitInput::minus()));
    let combo = p.amplitudes() * q.alpha + m.amplitudes() * q.beta;
    let diff = (combo - a.amplitudes()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(diff < 1e-12);
}

#[test]
fn variants_agree() {
    for (_, input) in input_set(4) {
        let (_, two) = run(&ProtocolConfig::default().with_input(input));
        let (_, one) = run(&ProtocolConfig {
            variant: ProtocolVariant::SingleCavity,
            ..ProtocolConfig::default()
        }
        .with_input(input));
        assert!((two.f3 - one.f3).abs() < 1e-10 && (two.f4 - one.f4).abs() < 1e-10);
        assert!((two.oracle_overlap - one.oracle_overlap).abs() < 1e-10);
        for k in 0..3 {
            assert!((two.bloch3[k] - one.bloch3[k]).abs() < 1e-10);
        }
    }
}

#[test]
fn blank_state() {
    let b = prepare_blank(&protocol_layout(3).unwrap()).unwrap();
    assert!((b.norm() - 1.0).abs() < 1e-15);
    assert!(prepare_blank(&protocol_layout(1).unwrap()).is_ok());
}

#[test]
fn calibrated_physical_runs_match() {
    for variant in [ProtocolVariant::TwoCavity, ProtocolVariant::SingleCavity] {
        let cal = calibrate_phases(variant, JcConvention::Physical, 2).unwrap();
        assert!(cal.worst_overlap >= 1.0 - 1e-10);
        assert!(!cal.corrections.is_empty());
        for (_, input) in input_set(4) {
            let base = ProtocolConfig {
                variant,
                ..ProtocolConfig::default()
            }
            .with_input(input);
            let (ideal, _) = run(&base);
            let (phys, r) = run(&ProtocolConfig {
                convention: JcConvention::Physical,
                corrections: Corrections::Calibrated,
                ..base
            });
            assert!((r.f3 - FIVE_SIXTHS).abs() < 1e-10);
            // equal up to one global phase
            assert!((ideal.inner(&phys).unwrap().norm() - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn density_engine_reproduces_pure_engine() {
    let q = QubitInput::from_bloch_angles(0.4, 4.0);
    let (_, p) = run(&ProtocolConfig::default().with_input(q));
    let (_, d) = run_protocol(&ProtocolConfig {
        engine: Engine::Density,
        ..ProtocolConfig::default().with_input(q)
    })
    .unwrap();
    assert!((p.f3 - d.f3).abs() < 1e-12 && (p.f4 - d.f4).abs() < 1e-12);
}

#[test]
fn equatorial_variant_trade_off() {
    let f = equatorial_run(0.0, ProtocolVariant::TwoCavity).unwrap().f3;
    for k in 0..16 {
        let phi = 2.0 * std::f64::consts::PI * k as f64 / 16.0;
        let r = equatorial_run(phi, ProtocolVariant::SingleCavity).unwrap();
        assert!((r.f3 - f).abs() < 1e-10);
    }
    // off the equator the equal-weight preparation is not universal
    let off = run_protocol(
        &ProtocolConfig {
            a1_preparation: uqcm::protocol::A1Preparation::Equatorial,
            ..ProtocolConfig::default()
        }
        .with_input(QubitInput::from_bloch_angles(0.0, 0.0)),
    )
    .unwrap()
    .1;
    assert!((off.f3 - FIVE_SIXTHS).abs() > 1e-3);
}

#[test]
fn golden_schedule_export() {
    let text = build_schedule(&ProtocolConfig::default()).unwrap().export_text();
    assert_eq!(text, include_str!("golden/two_cavity.txt"));
    let cal = build_schedule(&ProtocolConfig {
        variant: ProtocolVariant::SingleCavity,
        convention: JcConvention::Physical,
        corrections: Corrections::Calibrated,
        ..ProtocolConfig::default()
    })
    .unwrap()
    .export_text();
    assert_eq!(cal, include_str!("golden/single_cavity_calibrated.txt"));
}

mod common;

use std::f64::consts::PI;

use common::{c, jc_exponential};
use uqcm::gates::{classical_pulse, encoding_mix, jc_pulse, phase_shift, qpg, JcConvention, Transition};
use uqcm::quantum::{identity, is_unitary, max_abs_diff, C64};

const CONVENTIONS: [JcConvention; 2] = [JcConvention::Physical, JcConvention::Idealized];

#[test]
fn jc_matches_matrix_exponential() {
    for conv in CONVENTIONS {
        for theta in [PI / 2.0, PI, 2.0 * PI, 3.0 * PI, 0.37] {
            let u = jc_pulse(3, theta, conv).unwrap();
            let oracle = jc_exponential(3, theta, conv);
            assert!(max_abs_diff(&u, &oracle) < 1e-10, "{conv:?} θ={theta}");
        }
    }
}

#[test]
fn physical_two_photon_manifold() {
    let u = jc_pulse(3, PI, JcConvention::Physical).unwrap();
    let (e1, g2) = (3 + 1, 2);
    let h = PI * 2f64.sqrt() / 2.0;
    assert!((u[[e1, e1]] - c(h.cos())).norm() < 1e-15);
    assert!((u[[g2, e1]] - C64::new(0.0, -h.sin())).norm() < 1e-15);
    // |e,0⟩ → −i|g,1⟩
    assert!((u[[1, 3]] - C64::new(0.0, -1.0)).norm() < 1e-15);
}

#[test]
fn idealized_signs() {
    let m = 3;
    let u = jc_pulse(m, PI, JcConvention::Idealized).unwrap();
    // |g,1⟩ → |e,0⟩ and |e,0⟩ → −|g,1⟩
    assert!((u[[m, 1]] - c(1.0)).norm() < 1e-15);
    assert!((u[[1, m]] - c(-1.0)).norm() < 1e-15);
    let h = jc_pulse(m, PI / 2.0, JcConvention::Idealized).unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((h[[1, 1]] - c(r)).norm() < 1e-15 && (h[[m, 1]] - c(r)).norm() < 1e-15);
}

#[test]
fn conserved_excitation_and_dark_level() {
    for conv in CONVENTIONS {
        let u = jc_pulse(4, 1.3, conv).unwrap();
        let excitation = |k: usize| (k / 4 == 1) as usize + k % 4;
        for r in 0..12 {
            for k in 0..12 {
                if u[[r, k]].norm() > 0.0 {
                    assert_eq!(excitation(r), excitation(k));
                }
                if r / 4 == 2 || k / 4 == 2 {
                    let want = if r == k { c(1.0) } else { c(0.0) };
                    assert_eq!(u[[r, k]], want);
                }
            }
        }
    }
}

#[test]
fn composition_and_qpg() {
    for conv in CONVENTIONS {
        let ab = jc_pulse(3, 0.8, conv).unwrap().dot(&jc_pulse(3, 1.9, conv).unwrap());
        assert!(max_abs_diff(&ab, &jc_pulse(3, 2.7, conv).unwrap()) < 1e-12);
        let q = qpg(3, conv).unwrap();
        // {i, g} ⊗ {0, 1}
        let sub = [6, 7, 0, 1];
        for (a, &r) in sub.iter().enumerate() {
            for (b, &k) in sub.iter().enumerate() {
                let want = if a != b {
                    0.0
                } else if a == 3 {
                    -1.0
                } else {
                    1.0
                };
                assert!((q[[r, k]] - c(want)).norm() < 1e-14);
            }
        }
        assert!(max_abs_diff(&q.dot(&q).slice(ndarray::s![0..2, 0..2]).to_owned(), &identity(2)) < 1e-14);
    }
    assert!(jc_pulse(1, 1.0, JcConvention::Physical).is_err());
    assert!(jc_pulse(3, -0.1, JcConvention::Physical).is_err());
    assert!(jc_pulse(3, f64::NAN, JcConvention::Idealized).is_err());
}

#[test]
fn classical_presets() {
    for t in [Transition::Ge, Transition::Gi, Transition::Ei] {
        assert_eq!(classical_pulse(t, 0.0, 0.4), identity(3));
        let back = classical_pulse(t, 1.1, 0.4).dot(&classical_pulse(t, -1.1, 0.4));
        assert!(max_abs_diff(&back, &identity(3)) < 1e-12);
        assert!(is_unitary(&classical_pulse(t, 2.3, -0.7), 1e-12));
    }
    let prep = classical_pulse(Transition::Ge, 2.0 * (1.0f64 / 3.0).sqrt().asin(), 0.0);
    assert!((prep[[0, 0]] - c((2.0f64 / 3.0).sqrt())).norm() < 1e-15);
    assert!((prep[[1, 0]] - c((1.0f64 / 3.0).sqrt())).norm() < 1e-15);
    let ei = classical_pulse(Transition::Ei, PI, 0.0);
    assert!((ei[[2, 1]] - c(1.0)).norm() < 1e-15);
    assert_eq!(ei[[0, 0]], c(1.0));
    let mix = encoding_mix(PI / 2.0);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    assert!((mix[[2, 0]] - c(r)).norm() < 1e-15 && (mix[[0, 0]] - c(-r)).norm() < 1e-15);
    assert!((mix[[2, 2]] - c(r)).norm() < 1e-15 && (mix[[0, 2]] - c(r)).norm() < 1e-15);
    let p = phase_shift([0.0, PI, 0.0]);
    assert!((p[[1, 1]] - c(-1.0)).norm() < 1e-15);
    assert_eq!(phase_shift([0.0; 3]), identity(3));
}

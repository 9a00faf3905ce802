use std::f64::consts::FRAC_1_SQRT_2;

use super::config::{
    protocol_layout, A1Preparation, QubitInput, A1, A2, A3, A4, MODE_A, MODE_B,
};
use crate::gates::{a1_preparation_theta, classical_pulse, Transition, PREPARATION_PHASE};
use crate::quantum::{
    product_state, DensityState, LocalOperator, PureState, RegisterLayout, SubsystemKind, Vector, C64,
};
use crate::{Error, Result};

fn basis(dim: usize, k: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[k] = C64::new(1.0, 0.0);
    v
}

fn ground() -> Vector {
    basis(3, 0)
}

/// `(|i⟩ + s|g⟩)/√2` for `s = ±1`.
fn pm(sign: f64) -> Vector {
    Vector::from(vec![
        C64::new(sign * FRAC_1_SQRT_2, 0.0),
        C64::new(0.0, 0.0),
        C64::new(FRAC_1_SQRT_2, 0.0),
    ])
}

fn check_protocol_layout(layout: &RegisterLayout) -> Result<usize> {
    let s = layout.subsystems();
    let ok = s.len() == 6
        && s[..4].iter().all(|x| x.kind == SubsystemKind::Atom3)
        && s[4..].iter().all(|x| x.kind == SubsystemKind::Mode)
        && s[4].dimension == s[5].dimension;
    if !ok {
        return Err(Error::InvalidRegister(
            "expected four atoms followed by two equal modes".into(),
        ));
    }
    Ok(s[4].dimension - 1)
}

/// Input atom state `α|+⟩ + β|−⟩` on `(g, e, i)`.
pub fn prepare_input(alpha: C64, beta: C64) -> Result<Vector> {
    Ok(QubitInput::new(alpha, beta)?.atom_vector())
}

/// Blank state after A₁'s preparation pulse, with A₂ still in `|g⟩`:
/// `(√(2/3)|g⟩ − √(1/3)|e⟩)₁ |g⟩₂ |g⟩₃ |g⟩₄ |0⟩_a |0⟩_b`.
pub fn prepare_blank(layout: &RegisterLayout) -> Result<PureState> {
    let n_max = check_protocol_layout(layout)?;
    let vac = basis(n_max + 1, 0);
    let mut psi = product_state(
        layout,
        &[ground(), ground(), ground(), ground(), vac.clone(), vac],
    )?;
    let prep = LocalOperator::unitary(
        vec![A1],
        classical_pulse(Transition::Ge, a1_preparation_theta(), PREPARATION_PHASE),
    )?;
    psi.apply(&prep)?;
    Ok(psi)
}

/// Analytic final state for the standard preparation.
pub fn expected_output(input: QubitInput, n_max: usize) -> Result<PureState> {
    expected_output_with(input, A1Preparation::Standard, n_max)
}

/// Analytic final state
/// `α[w₀|++⟩|𝒜₊⟩ + w₁|Φ⟩|𝒜₋⟩] + β[w₀|−−⟩|𝒜₋⟩ + w₁|Φ⟩|𝒜₊⟩]`
/// with `|Φ⟩ = (|+−⟩ + |−+⟩)/√2`, `|𝒜₊⟩ = |g g 0_a 1_b⟩`, `|𝒜₋⟩ = |g g 0_a 0_b⟩`
/// and `(w₀, w₁)` the weights loaded into mode a.
pub fn expected_output_with(input: QubitInput, prep: A1Preparation, n_max: usize) -> Result<PureState> {
    QubitInput::new(input.alpha, input.beta)?;
    let layout = protocol_layout(n_max)?;
    let (w0, w1) = prep.mode_weights();
    let dim = n_max + 1;
    let ket = |c3: &Vector, c4: &Vector, photons_b: usize| -> Result<Vector> {
        Ok(product_state(
            &layout,
            &[ground(), ground(), c3.clone(), c4.clone(), basis(dim, 0), basis(dim, photons_b)],
        )?
        .amplitudes()
        .clone())
    };
    let (p, m) = (pm(1.0), pm(-1.0));
    let phi = |b: usize| -> Result<Vector> { Ok((ket(&p, &m, b)? + ket(&m, &p, b)?) * C64::from(FRAC_1_SQRT_2)) };

    let alpha_branch = ket(&p, &p, 1)? * C64::from(w0) + phi(0)? * C64::from(w1);
    let beta_branch = ket(&m, &m, 0)? * C64::from(w0) + phi(1)? * C64::from(w1);
    let amps = alpha_branch * input.alpha + beta_branch * input.beta;
    PureState::new(layout, amps)
}

/// Structure of the discarded subsystems after a run.
#[derive(Debug, Clone)]
pub struct AncillaAnalysis {
    /// `|⟨𝒜₊|𝒜₋⟩|` of the normalised ancilla states attached to the clone
    /// components `|++⟩` and `|−−⟩` (or to `|Φ⟩` when a branch is absent).
    pub overlap: f64,
    /// Reduced state of `A1, A2, mode a, mode b`.
    pub ancilla_state: DensityState,
    pub a1_ground: f64,
    pub a2_ground: f64,
    pub mode_a_vacuum: f64,
}

fn normalized(v: Vector) -> Option<Vector> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    (n > 1e-8).then(|| v / C64::from(n))
}

pub fn ancilla_analysis(psi: &PureState) -> Result<AncillaAnalysis> {
    check_protocol_layout(psi.layout())?;
    let pair = |a: &Vector, b: &Vector| -> Vector {
        a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
    };
    let (p, m) = (pm(1.0), pm(-1.0));
    let phi = (pair(&p, &m) + pair(&m, &p)) * C64::from(FRAC_1_SQRT_2);
    let cond = |local: &Vector| -> Result<Vector> { Ok(psi.conditional(&[A3, A4], local)?.1) };

    let v_phi = cond(&phi)?;
    let a_plus = normalized(cond(&pair(&p, &p))?).or_else(|| normalized(v_phi.clone()));
    let a_minus = normalized(cond(&pair(&m, &m))?).or_else(|| normalized(v_phi.clone()));
    let overlap = match (a_plus, a_minus) {
        (Some(a), Some(b)) => a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum::<C64>().norm(),
        _ => {
            return Err(Error::Invariant(
                "final state has no component on the clone subspace".into(),
            ))
        }
    };

    let g = ground();
    let vac = basis(psi.layout().dim(MODE_A), 0);
    let fid = |k: usize, v: &Vector| -> Result<f64> { psi.partial_trace(&[k])?.expectation(v) };
    Ok(AncillaAnalysis {
        overlap,
        ancilla_state: psi.partial_trace(&[A1, A2, MODE_A, MODE_B])?,
        a1_ground: fid(A1, &g)?,
        a2_ground: fid(A2, &g)?,
        mode_a_vacuum: fid(MODE_A, &vac)?,
    })
}

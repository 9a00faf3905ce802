#![allow(dead_code)]

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use uqcm::gates::JcConvention;
use uqcm::protocol::{protocol_layout, random_inputs, QubitInput};
use uqcm::quantum::{product_state, Matrix, PureState, Vector, C64};

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn ket(dim: usize, k: usize) -> Vector {
    let mut v = Vector::zeros(dim);
    v[k] = c(1.0);
    v
}

pub fn g() -> Vector {
    ket(3, 0)
}

pub fn e() -> Vector {
    ket(3, 1)
}

/// `(|i⟩ ± |g⟩)/√2`.
pub fn pm(sign: f64) -> Vector {
    Vector::from(vec![c(sign * FRAC_1_SQRT_2), c(0.0), c(FRAC_1_SQRT_2)])
}

pub fn fock(n: usize) -> Vector {
    ket(3, n)
}

/// Named inputs plus seeded random Bloch directions.
pub fn input_set(random: usize) -> Vec<(String, QubitInput)> {
    let h = FRAC_1_SQRT_2;
    let mut out = vec![
        ("plus".to_string(), QubitInput::plus()),
        ("minus".to_string(), QubitInput::minus()),
        ("i".to_string(), QubitInput::new(c(h), c(h)).unwrap()),
        ("g".to_string(), QubitInput::new(c(h), c(-h)).unwrap()),
    ];
    for (k, (theta, phi)) in random_inputs(random, 2024).into_iter().enumerate() {
        out.push((format!("random-{k}"), QubitInput::from_bloch_angles(theta, phi)));
    }
    out
}

/// Product state on `[A1, A2, A3, A4, Ma, Mb]` with n_max = 2.
pub fn product(locals: [Vector; 6]) -> Vector {
    product_state(&protocol_layout(2).unwrap(), &locals)
        .unwrap()
        .amplitudes()
        .clone()
}

fn combo(terms: Vec<(C64, Vector)>) -> PureState {
    let mut amps = Vector::zeros(729);
    for (w, v) in terms {
        amps = amps + v * w;
    }
    PureState::new(protocol_layout(2).unwrap(), amps).unwrap()
}

/// Whole-register states transcribed from the textbook description of the
/// protocol after the phase gate, the split, the unload and the write into
/// mode b (two-cavity schedule, n_max = 2).
pub fn after_phase_gate(q: QubitInput) -> PureState {
    let (a, b) = (q.alpha, q.beta);
    let s23 = c((2.0f64 / 3.0).sqrt());
    let s13 = c((1.0f64 / 3.0).sqrt());
    combo(vec![
        (s23 * a, product([g(), pm(1.0), g(), g(), fock(0), fock(0)])),
        (s23 * b, product([g(), pm(-1.0), g(), g(), fock(0), fock(0)])),
        (s13 * a, product([g(), pm(-1.0), g(), g(), fock(1), fock(0)])),
        (s13 * b, product([g(), pm(1.0), g(), g(), fock(1), fock(0)])),
    ])
}

pub fn after_split(q: QubitInput) -> PureState {
    let (a, b) = (q.alpha, q.beta);
    let s23 = c((2.0f64 / 3.0).sqrt());
    let s16 = c((1.0f64 / 6.0).sqrt());
    combo(vec![
        (s23 * a, product([g(), pm(1.0), g(), g(), fock(0), fock(0)])),
        (s23 * b, product([g(), pm(-1.0), g(), g(), fock(0), fock(0)])),
        (s16 * a, product([g(), pm(-1.0), g(), g(), fock(1), fock(0)])),
        (s16 * a, product([g(), pm(-1.0), e(), g(), fock(0), fock(0)])),
        (s16 * b, product([g(), pm(1.0), g(), g(), fock(1), fock(0)])),
        (s16 * b, product([g(), pm(1.0), e(), g(), fock(0), fock(0)])),
    ])
}

pub fn after_unload(q: QubitInput) -> PureState {
    let (a, b) = (q.alpha, q.beta);
    let s23 = c((2.0f64 / 3.0).sqrt());
    let s16 = c((1.0f64 / 6.0).sqrt());
    combo(vec![
        (s23 * a, product([g(), pm(1.0), g(), g(), fock(0), fock(0)])),
        (s23 * b, product([g(), pm(-1.0), g(), g(), fock(0), fock(0)])),
        (s16 * a, product([g(), pm(-1.0), g(), e(), fock(0), fock(0)])),
        (s16 * a, product([g(), pm(-1.0), e(), g(), fock(0), fock(0)])),
        (s16 * b, product([g(), pm(1.0), g(), e(), fock(0), fock(0)])),
        (s16 * b, product([g(), pm(1.0), e(), g(), fock(0), fock(0)])),
    ])
}

pub fn after_write(q: QubitInput) -> PureState {
    let (a, b) = (q.alpha, q.beta);
    let s23 = c((2.0f64 / 3.0).sqrt());
    let s16 = c((1.0f64 / 6.0).sqrt());
    let (p, m) = (pm(1.0), pm(-1.0));
    combo(vec![
        (s23 * a, product([g(), g(), m.clone(), m.clone(), fock(0), fock(1)])),
        (s23 * b, product([g(), g(), m.clone(), m.clone(), fock(0), fock(0)])),
        (s16 * a, product([g(), g(), m.clone(), p.clone(), fock(0), fock(0)])),
        (s16 * a, product([g(), g(), p.clone(), m.clone(), fock(0), fock(0)])),
        (s16 * b, product([g(), g(), m.clone(), p.clone(), fock(0), fock(1)])),
        (s16 * b, product([g(), g(), p, m, fock(0), fock(1)])),
    ])
}

fn to_na(m: &Matrix) -> DMatrix<C64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |r, k| m[[r, k]])
}

/// Resonant atom–mode propagator from the matrix exponential of the
/// coupling on `atom(g, e, i) ⊗ mode(0..mode_dim)`.
pub fn jc_exponential(mode_dim: usize, theta: f64, convention: JcConvention) -> Matrix {
    let dim = 3 * mode_dim;
    let ix = |lvl: usize, n: usize| lvl * mode_dim + n;
    // a σ⁺ : |g, n+1⟩ → √(n+1) |e, n⟩
    let mut lower = Matrix::zeros((dim, dim));
    for n in 0..mode_dim - 1 {
        lower[[ix(1, n), ix(0, n + 1)]] = c(((n + 1) as f64).sqrt());
    }
    let raise = lower.t().mapv(|z| z.conj());
    let generator = match convention {
        JcConvention::Physical => (&lower + &raise).mapv(|z| z * C64::new(0.0, -0.5 * theta)),
        JcConvention::Idealized => (&lower - &raise).mapv(|z| z * c(0.5 * theta)),
    };
    let u = to_na(&generator).exp();
    Matrix::from_shape_fn((dim, dim), |(r, k)| u[(r, k)])
}

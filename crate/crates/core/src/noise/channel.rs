use crate::quantum::{LocalOperator, Matrix, C64};
use crate::{Error, Result};

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Photon-loss probability after `duration` seconds at lifetime `t1`.
pub fn damping_probability(duration: f64, t1: f64) -> f64 {
    -(-duration / t1).exp_m1()
}

/// Amplitude-damping Kraus operators on a mode of dimension `mode_dim`:
/// `K_k|n⟩ = √C(n,k) (1−γ)^{(n−k)/2} γ^{k/2} |n−k⟩`.
pub fn damping_kraus(mode_dim: usize, gamma: f64) -> Result<Vec<Matrix>> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::InvalidParameter(format!(
            "damping probability must lie in [0, 1], got {gamma}"
        )));
    }
    if mode_dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "mode dimension must be >= 2, got {mode_dim}"
        )));
    }
    Ok((0..mode_dim)
        .map(|k| {
            let mut m = Matrix::zeros((mode_dim, mode_dim));
            for n in k..mode_dim {
                let amp = binomial(n, k).sqrt()
                    * (1.0 - gamma).powf(0.5 * (n - k) as f64)
                    * gamma.powf(0.5 * k as f64);
                m[[n - k, n]] = C64::new(amp, 0.0);
            }
            m
        })
        .collect())
}

/// Damping channel acting on register subsystem `mode`.
pub fn damping_channel(mode: usize, mode_dim: usize, gamma: f64) -> Result<LocalOperator> {
    LocalOperator::kraus(vec![mode], damping_kraus(mode_dim, gamma)?)
}

use num_rational::Ratio;

use crate::{Error, Result};

/// Optimal N→M universal cloning fidelity `(NM + N + M) / (M(N + 2))`.
pub fn uqcm_fidelity_bound(n: u64, m: u64) -> Result<Ratio<u64>> {
    if n == 0 || n > m {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= N <= M, got N={n}, M={m}"
        )));
    }
    Ok(Ratio::new(n * m + n + m, m * (n + 2)))
}

/// Average fidelity of a guessed (maximally mixed) copy.
pub fn trivial_baseline() -> Ratio<u64> {
    Ratio::new(2, 3)
}

/// Overlap `⟨ψ|(I/2)|ψ⟩` averaged over `points` pure states of a Fibonacci
/// Bloch grid. Equals 1/2 for every state.
pub fn maximally_mixed_overlap(points: usize) -> f64 {
    let half = [[0.5, 0.0], [0.0, 0.5]];
    let total: f64 = crate::protocol::bloch_grid(points)
        .into_iter()
        .map(|(theta, phi)| {
            let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
            // real and imaginary parts of (cos θ/2, e^{iφ} sin θ/2)
            let v = [(c, 0.0), (s * phi.cos(), s * phi.sin())];
            let mut acc = 0.0;
            for r in 0..2 {
                for k in 0..2 {
                    acc += half[r][k] * (v[r].0 * v[k].0 + v[r].1 * v[k].1);
                }
            }
            acc
        })
        .sum();
    total / points as f64
}

/// `1 − (F(1,2) − 2/3)/2`: per-run precision needed for the clones to stay
/// distinguishable from the trivial baseline.
pub fn precision_requirement() -> Ratio<u64> {
    let one = Ratio::from_integer(1);
    let gap = uqcm_fidelity_bound(1, 2).expect("valid arguments") - trivial_baseline();
    one - gap / 2
}

/// Per-pulse fidelity `t^{1/n}` needed to reach overall fidelity `t`.
pub fn pulse_fidelity_threshold(target_total: f64, n_pulses: u32) -> Result<f64> {
    if !(target_total > 0.0 && target_total <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "target fidelity must lie in (0, 1], got {target_total}"
        )));
    }
    if n_pulses == 0 {
        return Err(Error::InvalidParameter("pulse count must be at least 1".into()));
    }
    Ok(target_total.powf(1.0 / n_pulses as f64))
}

/// Multiplicative budget `f^n`.
pub fn process_fidelity_budget(per_pulse: f64, n_pulses: u32) -> Result<f64> {
    if !(per_pulse > 0.0 && per_pulse <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "per-pulse fidelity must lie in (0, 1], got {per_pulse}"
        )));
    }
    if n_pulses == 0 {
        return Err(Error::InvalidParameter("pulse count must be at least 1".into()));
    }
    Ok(per_pulse.powi(n_pulses as i32))
}

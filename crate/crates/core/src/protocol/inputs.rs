use std::f64::consts::PI;

use rand::Rng;

/// Fibonacci lattice of `n` points `(θ, φ)` on the Bloch sphere with
/// `cos θ_k = 1 − 2k/(n−1)`; a single point is the north pole.
pub fn bloch_grid(n: usize) -> Vec<(f64, f64)> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let z = if n == 1 {
                1.0
            } else {
                1.0 - 2.0 * k as f64 / (n - 1) as f64
            };
            let phi = (k as f64 * golden).rem_euclid(2.0 * PI);
            (z.clamp(-1.0, 1.0).acos(), phi)
        })
        .collect()
}

/// `n` directions drawn uniformly (Haar) on the Bloch sphere.
pub fn random_inputs(n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = crate::noise::trial_rng(seed, 0);
    (0..n)
        .map(|_| {
            let z: f64 = rng.random_range(-1.0..=1.0);
            let phi: f64 = rng.random_range(0.0..2.0 * PI);
            (z.acos(), phi)
        })
        .collect()
}

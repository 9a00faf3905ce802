use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::gates::JcConvention;
use crate::noise::{NoiseModel, TimingModel};
use crate::quantum::{bloch_vector, RegisterLayout, SubsystemSpec, Vector, C64, INPUT_TOL};
use crate::{Error, Result};

pub const A1: usize = 0;
pub const A2: usize = 1;
pub const A3: usize = 2;
pub const A4: usize = 3;
pub const MODE_A: usize = 4;
pub const MODE_B: usize = 5;

pub const SUBSYSTEM_LABELS: [&str; 6] = ["A1", "A2", "A3", "A4", "Ma", "Mb"];

/// Four atoms followed by the two modes, each truncated at `n_max` photons.
pub fn protocol_layout(n_max: usize) -> Result<RegisterLayout> {
    let mut specs = vec![SubsystemSpec::atom(); 4];
    specs.extend([SubsystemSpec::mode(n_max); 2]);
    RegisterLayout::new(specs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ProtocolVariant {
    /// Modes a and b live in two cavities crossed one after the other.
    #[default]
    TwoCavity,
    /// Modes a and b are two polarisation modes of one cavity; each atom
    /// meets both during a single transit.
    SingleCavity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Corrections {
    #[default]
    Off,
    Calibrated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    #[default]
    Pure,
    Density,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum A1Preparation {
    /// Mode a loaded with `√(2/3)|0⟩ + √(1/3)|1⟩`.
    #[default]
    Standard,
    /// Mode a loaded with `(|0⟩ + |1⟩)/√2`.
    Equatorial,
}

impl A1Preparation {
    /// Weights `(w0, w1)` of the vacuum and one-photon components loaded into mode a.
    pub fn mode_weights(self) -> (f64, f64) {
        match self {
            A1Preparation::Standard => ((2.0f64 / 3.0).sqrt(), (1.0f64 / 3.0).sqrt()),
            A1Preparation::Equatorial => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        }
    }
}

/// Input qubit `α|+⟩ + β|−⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitInput {
    pub alpha: C64,
    pub beta: C64,
}

impl QubitInput {
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if (norm - 1.0).abs() > INPUT_TOL {
            return Err(Error::NotNormalized {
                what: "input qubit",
                norm,
            });
        }
        Ok(Self { alpha, beta })
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn normalized(alpha: C64, beta: C64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidParameter("input state has zero norm".into()));
        }
        Ok(Self {
            alpha: alpha / norm,
            beta: beta / norm,
        })
    }

    pub fn plus() -> Self {
        Self {
            alpha: C64::new(1.0, 0.0),
            beta: C64::new(0.0, 0.0),
        }
    }

    pub fn minus() -> Self {
        Self {
            alpha: C64::new(0.0, 0.0),
            beta: C64::new(1.0, 0.0),
        }
    }

    /// Point `(θ, φ)` on the Bloch sphere of the `(|i⟩, |g⟩)` qubit:
    /// `cos(θ/2)|i⟩ + e^{iφ} sin(θ/2)|g⟩`.
    pub fn from_bloch_angles(theta: f64, phi: f64) -> Self {
        let c = C64::new((0.5 * theta).cos(), 0.0);
        let s = C64::from_polar((0.5 * theta).sin(), phi);
        Self {
            alpha: (c + s) * FRAC_1_SQRT_2,
            beta: (c - s) * FRAC_1_SQRT_2,
        }
    }

    /// Amplitudes on `(g, e, i)`.
    pub fn atom_vector(&self) -> Vector {
        Vector::from(vec![
            (self.alpha - self.beta) * FRAC_1_SQRT_2,
            C64::new(0.0, 0.0),
            (self.alpha + self.beta) * FRAC_1_SQRT_2,
        ])
    }

    /// Amplitudes on the `(|i⟩, |g⟩)` qubit basis.
    pub fn qubit_vector(&self) -> [C64; 2] {
        [
            (self.alpha + self.beta) * FRAC_1_SQRT_2,
            (self.alpha - self.beta) * FRAC_1_SQRT_2,
        ]
    }

    pub fn bloch(&self) -> [f64; 3] {
        let v = self.qubit_vector();
        let rho = crate::quantum::Matrix::from_shape_fn((2, 2), |(r, c)| v[r] * v[c].conj());
        bloch_vector(&rho)
    }
}

/// Everything needed to build and execute one protocol run.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolConfig {
    pub variant: ProtocolVariant,
    pub input: QubitInput,
    pub convention: JcConvention,
    pub corrections: Corrections,
    pub engine: Engine,
    /// Requires the density engine.
    pub noise: Option<NoiseModel>,
    pub a1_preparation: A1Preparation,
    /// Photon-number cutoff of both modes.
    pub n_max: usize,
    pub timing: TimingModel,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        Self {
            variant: ProtocolVariant::TwoCavity,
            input: QubitInput::plus(),
            convention: JcConvention::Idealized,
            corrections: Corrections::Off,
            engine: Engine::Pure,
            noise: None,
            a1_preparation: A1Preparation::Standard,
            n_max: 2,
            timing: TimingModel::default(),
        }
    }
}

impl ProtocolConfig {
    pub fn with_input(mut self, input: QubitInput) -> Self {
        self.input = input;
        self
    }

    pub fn validate(&self) -> Result<()> {
        QubitInput::new(self.input.alpha, self.input.beta)?;
        if self.n_max < 1 {
            return Err(Error::InvalidParameter("n_max must be at least 1".into()));
        }
        if let Some(noise) = &self.noise {
            if self.engine != Engine::Density {
                return Err(Error::InvalidParameter(
                    "a noise model requires the density engine".into(),
                ));
            }
            noise.validate()?;
        }
        self.timing.validate()
    }

    /// True when the run has no noise and the final state should match the
    /// analytic target.
    pub fn is_ideal(&self) -> bool {
        self.noise.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn input_atom_vectors() {
        let h = FRAC_1_SQRT_2;
        let v = QubitInput::plus().atom_vector();
        assert_eq!(v.to_vec(), vec![C64::from(h), C64::from(0.0), C64::from(h)]);
        let v = QubitInput::minus().atom_vector();
        assert_eq!(v.to_vec(), vec![C64::from(-h), C64::from(0.0), C64::from(h)]);
        let v = QubitInput::new(C64::from(h), C64::from(h)).unwrap().atom_vector();
        assert!(v[0].norm() < 1e-15 && (v[2] - C64::from(1.0)).norm() < 1e-15);
    }

    #[test]
    fn input_validation() {
        assert!(QubitInput::new(C64::from(1.0), C64::from(1.0)).is_err());
        let err = QubitInput::normalized(C64::from(0.0), C64::from(0.0)).unwrap_err();
        assert_eq!(err.to_string(), "invalid parameter: input state has zero norm");
        let q = QubitInput::normalized(C64::from(3.0), C64::new(0.0, 4.0)).unwrap();
        assert!((q.alpha - C64::from(0.6)).norm() < 1e-15);
    }

    #[test]
    fn bloch_angles_round_trip() {
        let q = QubitInput::from_bloch_angles(0.0, 0.0);
        let h = FRAC_1_SQRT_2;
        assert!((q.alpha - C64::from(h)).norm() < 1e-15 && (q.beta - C64::from(h)).norm() < 1e-15);
        let b = QubitInput::from_bloch_angles(1.1, 2.3).bloch();
        let want = [1.1f64.sin() * 2.3f64.cos(), 1.1f64.sin() * 2.3f64.sin(), 1.1f64.cos()];
        for k in 0..3 {
            assert!((b[k] - want[k]).abs() < 1e-14);
        }
        let p = QubitInput::plus().bloch();
        assert!((p[0] - 1.0).abs() < 1e-15 && p[1].abs() < 1e-15 && p[2].abs() < 1e-15);
    }

    #[test]
    fn noise_needs_density_engine() {
        let cfg = ProtocolConfig {
            noise: Some(NoiseModel::default()),
            ..ProtocolConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}

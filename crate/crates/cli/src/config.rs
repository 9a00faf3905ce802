use std::path::Path;

use serde::{Deserialize, Serialize};
use uqcm::gates::JcConvention;
use uqcm::noise::{NoiseModel, TimingModel};
use uqcm::protocol::{A1Preparation, Corrections, Engine, ProtocolConfig, ProtocolVariant, QubitInput};
use uqcm::quantum::INPUT_TOL;

use crate::args::{NoiseArgs, ProtocolArgs, TimingArgs};
use crate::error::{CliError, CliResult};

/// Protocol settings as written in a configuration file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProtocolSection {
    pub variant: ProtocolVariant,
    pub convention: JcConvention,
    pub corrections: Corrections,
    pub engine: Engine,
    pub a1_preparation: A1Preparation,
    pub n_max: usize,
    /// `[re, im]` of the `|+⟩` amplitude.
    pub alpha: [f64; 2],
    /// `[re, im]` of the `|−⟩` amplitude.
    pub beta: [f64; 2],
}

impl Default for ProtocolSection {
    fn default() -> Self {
        let d = ProtocolConfig::default();
        Self {
            variant: d.variant,
            convention: d.convention,
            corrections: d.corrections,
            engine: d.engine,
            a1_preparation: d.a1_preparation,
            n_max: d.n_max,
            alpha: [d.input.alpha.re, d.input.alpha.im],
            beta: [d.input.beta.re, d.input.beta.im],
        }
    }
}

/// Complete run configuration; every key is optional in files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfigFile {
    pub protocol: ProtocolSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoiseModel>,
    pub timing: TimingModel,
}

impl RunConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        let is_json = path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        let parsed = if is_json {
            serde_json::from_str(&text).map_err(|e| e.to_string())
        } else {
            toml::from_str(&text).map_err(|e| e.to_string())
        };
        parsed.map_err(|e| CliError::Validation(format!("invalid config {}: {e}", path.display())))
    }

    pub fn load_or_default(path: Option<&Path>) -> CliResult<Self> {
        path.map_or_else(|| Ok(Self::default()), Self::load)
    }

    pub fn apply_protocol(&mut self, a: &ProtocolArgs) {
        let p = &mut self.protocol;
        if let Some(v) = &a.alpha {
            p.alpha = [v[0], v[1]];
        }
        if let Some(v) = &a.beta {
            p.beta = [v[0], v[1]];
        }
        if let Some(v) = a.variant {
            p.variant = v.into();
        }
        if let Some(v) = a.convention {
            p.convention = v.into();
        }
        if let Some(v) = a.corrections {
            p.corrections = v.into();
        }
        if let Some(v) = a.engine {
            p.engine = v.into();
        }
        if let Some(v) = a.a1_preparation {
            p.a1_preparation = v.into();
        }
        if let Some(v) = a.n_max {
            p.n_max = v;
        }
    }

    pub fn apply_timing(&mut self, a: &TimingArgs) {
        let t = &mut self.timing;
        if let Some(v) = a.velocity {
            t.velocity = v;
        }
        if let Some(v) = a.rabi_freq {
            t.rabi_freq = v;
        }
        if let Some(v) = a.transit_time {
            t.transit_time = Some(v);
        }
        if let Some(v) = a.gap {
            t.gap = v;
        }
    }

    /// Noise section with flags applied (created if absent).
    pub fn apply_noise(&mut self, a: &NoiseArgs) {
        let n = self.noise.get_or_insert_with(NoiseModel::default);
        if let Some(v) = a.t1 {
            n.cavity_t1 = v;
        }
        if let Some(v) = a.sigma {
            n.pulse_sigma = v;
        }
        if let Some(v) = a.trials {
            n.trials = v;
        }
        if let Some(v) = a.seed {
            n.seed = v;
        }
        if let Some(v) = a.damping {
            n.damping = v.into();
        }
    }

    /// Normalises the input amplitudes in place, returning the original
    /// norm when it differed from 1.
    pub fn normalize_input(&mut self) -> CliResult<Option<f64>> {
        let p = &mut self.protocol;
        let alpha = num_complex::Complex64::new(p.alpha[0], p.alpha[1]);
        let beta = num_complex::Complex64::new(p.beta[0], p.beta[1]);
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        let q = QubitInput::normalized(alpha, beta)?;
        p.alpha = [q.alpha.re, q.alpha.im];
        p.beta = [q.beta.re, q.beta.im];
        Ok(((norm - 1.0).abs() > INPUT_TOL).then_some(norm))
    }

    pub fn protocol_config(&self) -> CliResult<ProtocolConfig> {
        let p = &self.protocol;
        let input = QubitInput::new(
            num_complex::Complex64::new(p.alpha[0], p.alpha[1]),
            num_complex::Complex64::new(p.beta[0], p.beta[1]),
        )?;
        let cfg = ProtocolConfig {
            variant: p.variant,
            input,
            convention: p.convention,
            corrections: p.corrections,
            engine: p.engine,
            noise: self.noise,
            a1_preparation: p.a1_preparation,
            n_max: p.n_max,
            timing: self.timing,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uqcm::gates::JcConvention;
use uqcm::noise::DampingMode;
use uqcm::protocol::{A1Preparation, Corrections, Engine, ProtocolVariant};

#[derive(Parser, Debug)]
#[command(name = "uqcm", version, about = "Simulate the cavity QED 1->2 universal quantum cloning machine")]
pub struct Cli {
    /// TOML or JSON run configuration; explicit flags take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the protocol once and report clone fidelities.
    Run {
        #[command(flatten)]
        protocol: ProtocolArgs,
        #[command(flatten)]
        timing: TimingArgs,
    },
    /// Sweep inputs over the Bloch sphere.
    Sweep {
        /// Number of inputs.
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Draw random directions with this seed instead of a Fibonacci grid.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        protocol: ProtocolArgs,
    },
    /// Monte Carlo over cavity damping and pulse over-rotations.
    Noise {
        #[command(flatten)]
        protocol: ProtocolArgs,
        #[command(flatten)]
        noise: NoiseArgs,
        #[command(flatten)]
        timing: TimingArgs,
    },
    /// Per-pulse fidelity budget and fidelity bounds.
    Budget {
        /// Overall fidelity to reach.
        #[arg(long, default_value_t = 0.92)]
        target: f64,
        #[arg(long, default_value_t = 16)]
        pulses: u32,
        /// Compare the multiplicative budget with a simulation at this over-rotation.
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Pulse durations, storage times and feasibility verdicts.
    Timing {
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[command(flatten)]
        timing: TimingArgs,
    },
    /// Phase corrections for the physical pulse convention.
    Calibrate {
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        #[arg(long, value_enum, default_value = "physical")]
        convention: ConventionArg,
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Args, Debug, Default)]
pub struct ProtocolArgs {
    /// Amplitude on |+>, as real and imaginary parts.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    pub alpha: Option<Vec<f64>>,
    /// Amplitude on |->, as real and imaginary parts.
    #[arg(long, num_args = 2, value_names = ["RE", "IM"], allow_negative_numbers = true)]
    pub beta: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    #[arg(long, value_enum)]
    pub convention: Option<ConventionArg>,
    #[arg(long, value_enum)]
    pub corrections: Option<CorrectionsArg>,
    #[arg(long, value_enum)]
    pub engine: Option<EngineArg>,
    #[arg(long, value_enum)]
    pub a1_preparation: Option<PreparationArg>,
    /// Photon-number cutoff of both modes.
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Args, Debug, Default)]
pub struct TimingArgs {
    /// Atomic velocity, m/s.
    #[arg(long)]
    pub velocity: Option<f64>,
    /// Single-photon Rabi frequency, Hz.
    #[arg(long)]
    pub rabi_freq: Option<f64>,
    /// Transit window, s (default: transit length / velocity).
    #[arg(long)]
    pub transit_time: Option<f64>,
    /// Idle time between windows, s.
    #[arg(long)]
    pub gap: Option<f64>,
}

#[derive(Args, Debug, Default)]
pub struct NoiseArgs {
    /// Cavity damping time, s.
    #[arg(long)]
    pub t1: Option<f64>,
    /// Fractional over-rotation standard deviation.
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub damping: Option<DampingArg>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    TwoCavity,
    SingleCavity,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Physical,
    Idealized,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CorrectionsArg {
    Off,
    Calibrated,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Pure,
    Density,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum PreparationArg {
    Standard,
    Equatorial,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DampingArg {
    LoadedOnly,
    Always,
}

impl From<VariantArg> for ProtocolVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::TwoCavity => ProtocolVariant::TwoCavity,
            VariantArg::SingleCavity => ProtocolVariant::SingleCavity,
        }
    }
}

impl From<ConventionArg> for JcConvention {
    fn from(v: ConventionArg) -> Self {
        match v {
            ConventionArg::Physical => JcConvention::Physical,
            ConventionArg::Idealized => JcConvention::Idealized,
        }
    }
}

impl From<CorrectionsArg> for Corrections {
    fn from(v: CorrectionsArg) -> Self {
        match v {
            CorrectionsArg::Off => Corrections::Off,
            CorrectionsArg::Calibrated => Corrections::Calibrated,
        }
    }
}

impl From<EngineArg> for Engine {
    fn from(v: EngineArg) -> Self {
        match v {
            EngineArg::Pure => Engine::Pure,
            EngineArg::Density => Engine::Density,
        }
    }
}

impl From<PreparationArg> for A1Preparation {
    fn from(v: PreparationArg) -> Self {
        match v {
            PreparationArg::Standard => A1Preparation::Standard,
            PreparationArg::Equatorial => A1Preparation::Equatorial,
        }
    }
}

impl From<DampingArg> for DampingMode {
    fn from(v: DampingArg) -> Self {
        match v {
            DampingArg::LoadedOnly => DampingMode::LoadedOnly,
            DampingArg::Always => DampingMode::Always,
        }
    }
}

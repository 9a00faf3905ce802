use serde::{Deserialize, Serialize};

/// Storage and feasibility digest of the timing report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingSummary {
    pub transit_time: f64,
    pub storage_mode_a: f64,
    pub storage_mode_b: f64,
    pub feasible: bool,
    /// Names of failing constraints.
    pub limiting: Vec<String>,
}

/// Outcome of one protocol run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloneReport {
    /// `⟨ψ_in|ρ₃|ψ_in⟩` with the input embedded in the clone atom.
    pub f3: f64,
    pub f4: f64,
    pub bloch_in: [f64; 3],
    pub bloch3: [f64; 3],
    pub bloch4: [f64; 3],
    /// `|⟨𝒜₊|𝒜₋⟩|`; only available for pure final states.
    pub ancilla_overlap: Option<f64>,
    /// Largest population outside the qubit spans of the clones or above
    /// one photon in either mode.
    pub leakage: f64,
    /// `|⟨expected|ψ⟩|`, or `√⟨expected|ρ|expected⟩` for mixed states.
    pub oracle_overlap: f64,
    pub a1_ground: f64,
    pub a2_ground: f64,
    pub mode_a_vacuum: f64,
    pub qubit_embedding: String,
    pub timing: TimingSummary,
}

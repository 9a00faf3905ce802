use serde::Serialize;
use serde_json::Value;
use uqcm::gates::Calibration;
use uqcm::noise::{BudgetComparison, NoisyResult, TimingReport};
use uqcm::protocol::{CloneReport, Schedule, SUBSYSTEM_LABELS};

use crate::config::RunConfigFile;
use crate::error::{CliError, CliResult};

/// One schedule step as it appears in a report.
#[derive(Debug, Clone, Serialize)]
pub struct StepAnnotation {
    pub index: usize,
    pub stage: &'static str,
    pub kind: &'static str,
    pub targets: String,
    pub theta: Option<f64>,
    pub window: Option<usize>,
    pub duration: f64,
}

pub fn annotate(schedule: &Schedule) -> Vec<StepAnnotation> {
    schedule
        .steps
        .iter()
        .enumerate()
        .map(|(index, s)| StepAnnotation {
            index,
            stage: s.stage.name(),
            kind: s.pulse.kind().name(),
            targets: s
                .pulse
                .targets()
                .iter()
                .map(|&t| SUBSYSTEM_LABELS[t])
                .collect::<Vec<_>>()
                .join(","),
            theta: s.pulse.theta(),
            window: s.window,
            duration: s.duration,
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Fraction {
    pub exact: String,
    pub value: f64,
}

impl From<num_rational::Ratio<u64>> for Fraction {
    fn from(r: num_rational::Ratio<u64>) -> Self {
        Self {
            exact: r.to_string(),
            value: *r.numer() as f64 / *r.denom() as f64,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BudgetSection {
    pub target: f64,
    pub pulses: u32,
    /// Per-pulse fidelity needed to reach `target`.
    pub threshold: f64,
    pub clone_bound: Fraction,
    pub trivial_baseline: Fraction,
    pub precision_requirement: Fraction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<BudgetComparison>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    pub phi: f64,
    pub f3: f64,
    pub f4: f64,
    pub bloch_in: [f64; 3],
    pub bloch3: [f64; 3],
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepSummary {
    pub points: usize,
    pub min_f: f64,
    pub max_f: f64,
    pub variance_f: f64,
}

impl SweepSummary {
    pub fn of(rows: &[SweepRow]) -> Self {
        let fs: Vec<f64> = rows.iter().flat_map(|r| [r.f3, r.f4]).collect();
        let n = fs.len().max(1) as f64;
        let mean = fs.iter().sum::<f64>() / n;
        Self {
            points: rows.len(),
            min_f: fs.iter().copied().fold(f64::INFINITY, f64::min),
            max_f: fs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            variance_f: fs.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / n,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepSection {
    pub random_seed: Option<u64>,
    pub summary: SweepSummary,
    pub rows: Vec<SweepRow>,
}

/// Everything a command reports; absent sections are omitted.
#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: RunConfigFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clone: Option<CloneReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub noise: Option<NoisyResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub calibration: Option<Calibration>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<TimingReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub schedule: Vec<StepAnnotation>,
}

impl ReportDocument {
    pub fn new(command: &'static str, config: RunConfigFile) -> Self {
        Self {
            tool: "uqcm",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            clone: None,
            noise: None,
            budget: None,
            calibration: None,
            sweep: None,
            timing: None,
            schedule: Vec::new(),
        }
    }

    pub fn to_json(&self) -> CliResult<String> {
        serde_json::to_string_pretty(self)
            .map(|mut s| {
                s.push('\n');
                s
            })
            .map_err(|e| CliError::Internal(format!("cannot serialise report: {e}")))
    }

    /// `key.path = value` lines derived from the JSON form.
    pub fn to_text(&self) -> CliResult<String> {
        let value = serde_json::to_value(self)
            .map_err(|e| CliError::Internal(format!("cannot serialise report: {e}")))?;
        let mut out = String::new();
        flatten("", &value, &mut out);
        Ok(out)
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut String) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{prefix} = [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        v => out.push_str(&format!("{prefix} = {}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => sig12(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Twelve significant digits, positional for moderate magnitudes.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let s = format!("{:.*}", (11 - exp).max(0) as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

#[cfg(test)]
mod tests {
    use super::sig12;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(5.0 / 6.0), "0.833333333333");
        assert_eq!(sig12(2.0e-4), "0.0002");
        assert_eq!(sig12(1.0), "1");
        assert_eq!(sig12(-0.5), "-0.5");
        assert_eq!(sig12(1.3e5), "130000");
        assert_eq!(sig12(1e-9), "1.00000000000e-9");
    }
}

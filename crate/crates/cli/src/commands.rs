use std::path::Path;

use uqcm::gates::calibrate_phases;
use uqcm::noise::{
    budget_comparison, noisy_run, precision_requirement, pulse_fidelity_threshold, schedule_timing,
    trivial_baseline, uqcm_fidelity_bound,
};
use uqcm::protocol::{
    bloch_grid, build_schedule, random_inputs, run_protocol, Engine, QubitInput,
};

use crate::args::{Command, Format};
use crate::config::RunConfigFile;
use crate::error::{CliError, CliResult};
use crate::render::{annotate, BudgetSection, ReportDocument, SweepRow, SweepSection, SweepSummary};

pub fn execute(command: &Command, config_path: Option<&Path>, format: Option<Format>) -> CliResult<String> {
    let mut file = RunConfigFile::load_or_default(config_path)?;
    let format = format.unwrap_or(match command {
        Command::Sweep { .. } => Format::Csv,
        _ => Format::Json,
    });
    if format == Format::Csv && !matches!(command, Command::Sweep { .. }) {
        return Err(CliError::Validation("csv output is only available for sweep".into()));
    }

    let doc = match command {
        Command::Run { protocol, timing } => {
            file.apply_protocol(protocol);
            file.apply_timing(timing);
            run(file)?
        }
        Command::Sweep { grid, seed, protocol } => {
            file.apply_protocol(protocol);
            let doc = sweep(file, *grid, *seed)?;
            if format == Format::Csv {
                return sweep_csv(doc.sweep.as_ref().map_or(&[], |s| s.rows.as_slice()));
            }
            doc
        }
        Command::Noise { protocol, noise, timing } => {
            file.apply_protocol(protocol);
            file.apply_timing(timing);
            file.apply_noise(noise);
            file.protocol.engine = Engine::Density;
            noise_study(file)?
        }
        Command::Budget { target, pulses, sigma, trials, seed } => {
            budget(file, *target, *pulses, *sigma, *trials, *seed)?
        }
        Command::Timing { variant, timing } => {
            if let Some(v) = variant {
                file.protocol.variant = (*v).into();
            }
            file.apply_timing(timing);
            timing_report(file)?
        }
        Command::Calibrate { variant, convention, n_max } => {
            if let Some(v) = variant {
                file.protocol.variant = (*v).into();
            }
            file.protocol.convention = (*convention).into();
            if let Some(n) = n_max {
                file.protocol.n_max = *n;
            }
            calibrate(file)?
        }
    };
    match format {
        Format::Json => doc.to_json(),
        _ => doc.to_text(),
    }
}

fn normalize(file: &mut RunConfigFile) -> CliResult<()> {
    if let Some(norm) = file.normalize_input()? {
        eprintln!("warning: input amplitudes had norm {norm}; rescaled to 1");
    }
    Ok(())
}

fn run(mut file: RunConfigFile) -> CliResult<ReportDocument> {
    normalize(&mut file)?;
    let cfg = file.protocol_config()?;
    let (_, report) = run_protocol(&cfg)?;
    let schedule = build_schedule(&cfg)?;
    let timing = schedule_timing(&cfg.timing, &schedule)?;
    let mut doc = ReportDocument::new("run", file);
    doc.clone = Some(report);
    doc.timing = Some(timing);
    doc.schedule = annotate(&schedule);
    Ok(doc)
}

fn sweep(mut file: RunConfigFile, grid: usize, seed: Option<u64>) -> CliResult<ReportDocument> {
    if grid == 0 {
        return Err(CliError::Validation("grid must be at least 1".into()));
    }
    normalize(&mut file)?;
    let base = file.protocol_config()?;
    let points = match seed {
        Some(s) => random_inputs(grid, s),
        None => bloch_grid(grid),
    };
    let rows = points
        .into_iter()
        .map(|(theta, phi)| {
            let cfg = base.clone().with_input(QubitInput::from_bloch_angles(theta, phi));
            let (_, r) = run_protocol(&cfg)?;
            Ok(SweepRow {
                theta,
                phi,
                f3: r.f3,
                f4: r.f4,
                bloch_in: r.bloch_in,
                bloch3: r.bloch3,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    let summary = SweepSummary::of(&rows);
    eprintln!(
        "sweep: {} inputs, F min {:.12} max {:.12} variance {:.3e}",
        summary.points, summary.min_f, summary.max_f, summary.variance_f
    );
    let mut doc = ReportDocument::new("sweep", file);
    doc.sweep = Some(SweepSection {
        random_seed: seed,
        summary,
        rows,
    });
    Ok(doc)
}

fn sweep_csv(rows: &[SweepRow]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let internal = |e: csv::Error| CliError::Internal(format!("csv: {e}"));
    w.write_record(["theta", "phi", "F3", "F4", "shrink_x", "shrink_y", "shrink_z"])
        .map_err(internal)?;
    for r in rows {
        let fields = [r.theta, r.phi, r.f3, r.f4, r.bloch3[0], r.bloch3[1], r.bloch3[2]];
        w.write_record(fields.iter().map(|x| format!("{x:?}"))).map_err(internal)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Internal(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

fn noise_study(mut file: RunConfigFile) -> CliResult<ReportDocument> {
    normalize(&mut file)?;
    let cfg = file.protocol_config()?;
    let noise = cfg
        .noise
        .ok_or_else(|| CliError::Internal("noise model missing after merge".into()))?;
    let result = noisy_run(&cfg, &noise)?;
    let schedule = build_schedule(&cfg)?;
    let mut doc = ReportDocument::new("noise", file);
    doc.noise = Some(result);
    doc.timing = Some(schedule_timing(&cfg.timing, &schedule)?);
    Ok(doc)
}

fn budget(
    mut file: RunConfigFile,
    target: f64,
    pulses: u32,
    sigma: Option<f64>,
    trials: usize,
    seed: u64,
) -> CliResult<ReportDocument> {
    let threshold = pulse_fidelity_threshold(target, pulses)?;
    let comparison = match sigma {
        Some(s) => {
            normalize(&mut file)?;
            file.protocol.engine = Engine::Density;
            let cfg = file.protocol_config()?;
            Some(budget_comparison(&cfg, s, trials, seed)?)
        }
        None => None,
    };
    let mut doc = ReportDocument::new("budget", file);
    doc.budget = Some(BudgetSection {
        target,
        pulses,
        threshold,
        clone_bound: uqcm_fidelity_bound(1, 2)?.into(),
        trivial_baseline: trivial_baseline().into(),
        precision_requirement: precision_requirement().into(),
        comparison,
    });
    Ok(doc)
}

fn timing_report(mut file: RunConfigFile) -> CliResult<ReportDocument> {
    normalize(&mut file)?;
    let cfg = file.protocol_config()?;
    let schedule = build_schedule(&cfg)?;
    let report = schedule_timing(&cfg.timing, &schedule)?;
    for v in report.limiting() {
        eprintln!("infeasible: {} ({})", v.constraint, v.detail);
    }
    let mut doc = ReportDocument::new("timing", file);
    doc.timing = Some(report);
    doc.schedule = annotate(&schedule);
    Ok(doc)
}

fn calibrate(mut file: RunConfigFile) -> CliResult<ReportDocument> {
    normalize(&mut file)?;
    let cfg = file.protocol_config()?;
    let calibration = calibrate_phases(cfg.variant, cfg.convention, cfg.n_max)?;
    let mut doc = ReportDocument::new("calibrate", file);
    doc.calibration = Some(calibration);
    Ok(doc)
}

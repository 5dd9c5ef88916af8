//! `decoy estimate`: yield estimate with rigorous interval and the full
//! error budget, from a gain file or a freshly simulated record.

use serde_json::json;

use decoy_core::{multimode_estimate_with_cap, EstimateReport, GainRecord, Provenance};
use error_budget::{total_error, DeltaModel, ErrorBudget, NoiseModel};

use crate::config::ExperimentConfig;
use crate::{commands::emit_json, gainfile, CliError};

pub fn run(config: &ExperimentConfig) -> Result<(), CliError> {
    let schedule = config.schedule()?;
    let record = match &config.gains_file {
        Some(path) => gainfile::read_gain_file(path)?,
        None => crate::commands::simulate::synthesize(config, &schedule)?,
    };
    if record.mode_count() != config.modes {
        return Err(CliError::Config(format!(
            "gains are {}-mode but the config requests {} modes",
            record.mode_count(),
            config.modes
        )));
    }
    let report =
        multimode_estimate_with_cap(&record, &schedule, config.modes, config.tensor_cap)
            .map_err(CliError::from_core)?;
    let budget = assemble_budget(config, &record, &schedule)?;
    emit_json(&render(&report, &budget), config.output.as_deref())
}

/// Statistical budget implied by the record: the summed pulses when it was
/// sampled, infinite (no statistical term) when the gains are exact.
fn assemble_budget(
    config: &ExperimentConfig,
    record: &GainRecord,
    schedule: &decoy_core::IntensitySchedule,
) -> Result<ErrorBudget, CliError> {
    let total_pulses: u64 = record
        .entries()
        .iter()
        .map(|e| match e.provenance() {
            Provenance::Sampled { pulses, .. } => *pulses,
            Provenance::Exact { .. } => 0,
        })
        .sum();
    let budget = if total_pulses == 0 { f64::INFINITY } else { total_pulses as f64 };
    total_error(
        schedule.probe_count(),
        config.modes,
        budget,
        &DeltaModel::ExactSchedule(schedule.clone()),
        &NoiseModel::ExactSchedule(schedule.clone()),
    )
    .map_err(CliError::from_budget)
}

fn render(report: &EstimateReport, budget: &ErrorBudget) -> serde_json::Value {
    json!({
        "estimate": report.estimate,
        "raw_interval": [report.raw_lo, report.raw_hi],
        "interval": [report.lo, report.hi],
        "delta": report.delta,
        "modes": report.mode_count,
        "budget": {
            "pulses": if budget.budget.is_finite() { json!(budget.budget) } else { json!(null) },
            "stat_error_per_gain": budget.stat_error_per_gain,
            "noise_factor": budget.noise_factor,
            "stat_error_estimate": budget.stat_error_estimate,
            "estimation_error": budget.estimation_error,
            "total_error": budget.total_error,
        },
    })
}

//! `decoy optimize`: best probe count for a pulse budget.

use serde_json::json;

use error_budget::{optimize_probe_count, ErrorBudget, ModelDescriptor};

use crate::config::ExperimentConfig;
use crate::{commands::emit_json, CliError};

pub fn run(config: &ExperimentConfig) -> Result<(), CliError> {
    let (probe_count, budget) = optimize_probe_count(
        config.budget,
        config.modes,
        &config.delta_model(),
        &config.noise_model(),
        config.probe_cap,
    )
    .map_err(CliError::from_budget)?;
    emit_json(
        &json!({
            "optimal_probe_count": probe_count,
            "budget": render_budget(&budget),
        }),
        config.output.as_deref(),
    )
}

pub fn render_budget(budget: &ErrorBudget) -> serde_json::Value {
    json!({
        "probe_count": budget.probe_count,
        "modes": budget.mode_count,
        "pulses": if budget.budget.is_finite() { json!(budget.budget) } else { json!(null) },
        "stat_error_per_gain": budget.stat_error_per_gain,
        "noise_factor": budget.noise_factor,
        "stat_error_estimate": budget.stat_error_estimate,
        "estimation_error": budget.estimation_error,
        "total_error": budget.total_error,
        "delta_model": render_descriptor(&budget.delta_model),
        "noise_model": render_descriptor(&budget.noise_model),
    })
}

fn render_descriptor(descriptor: &ModelDescriptor) -> serde_json::Value {
    match descriptor {
        ModelDescriptor::Exact => json!("exact"),
        ModelDescriptor::Fitted { slope, intercept } => {
            json!({"fitted": {"slope": slope, "intercept": intercept}})
        }
    }
}

//! `decoy coeffs`: the coefficient table for a schedule, with the interval
//! width and noise factor.

use serde_json::json;

use decoy_core::{
    decimal_string, interval_delta_auto, lambda_coefficients, ArithmeticMode,
};
use error_budget::f_factor;

use crate::config::{Arithmetic, ExperimentConfig};
use crate::{commands::emit_json, CliError};

pub fn run(config: &ExperimentConfig) -> Result<(), CliError> {
    let schedule = config.schedule()?;
    // Beyond eight probes the float path cannot certify the width; promote.
    let arithmetic = if schedule.probe_count() > 8 { Arithmetic::Exact } else { config.arithmetic };
    let mode = match arithmetic {
        Arithmetic::Float => ArithmeticMode::Float,
        Arithmetic::Exact => ArithmeticMode::Exact,
    };
    let coefficients = lambda_coefficients(&schedule, mode).map_err(CliError::from_core)?;
    let noise_factor = f_factor(&coefficients, config.modes);

    let (lambda, delta) = match arithmetic {
        Arithmetic::Exact => {
            let lambda: Vec<serde_json::Value> = (0..=schedule.probe_count())
                .map(|j| {
                    json!(decimal_string(coefficients.lambda_exact(j).unwrap(), config.digits))
                })
                .collect();
            let certified =
                decoy_core::interval_delta_exact(&schedule).map_err(CliError::from_core)?;
            (lambda, json!(decimal_string(&certified.value, config.digits)))
        }
        Arithmetic::Float => {
            let lambda = (0..=schedule.probe_count())
                .map(|j| json!(coefficients.lambda(j)))
                .collect();
            let delta = interval_delta_auto(&schedule).map_err(CliError::from_core)?;
            (lambda, json!(delta))
        }
    };

    emit_json(
        &json!({
            "intensities": schedule.intensities_f64(),
            "probe_count": schedule.probe_count(),
            "modes": config.modes,
            "arithmetic": match arithmetic {
                Arithmetic::Float => "float",
                Arithmetic::Exact => "exact",
            },
            "lambda": lambda,
            "delta": delta,
            "noise_factor": noise_factor,
        }),
        config.output.as_deref(),
    )
}

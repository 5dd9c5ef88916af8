//! `decoy reproduce --figure figN`: the figure sweeps as CSV data files
//! plus fit coefficients as JSON on stdout.

use std::path::PathBuf;

use serde_json::json;

use decoy_core::{interval_delta_exact, lambda_equal_spacing, IntensitySchedule};
use error_budget::{
    f_factor, linear_fit, optimize_probe_count, power_fit, LinearFit, PowerFit,
};

use crate::config::ExperimentConfig;
use crate::output::{fmt_f64, render_csv, write_atomic};
use crate::CliError;

/// Probe range of the width and noise-factor sweeps.
const PROBE_RANGE: std::ops::RangeInclusive<usize> = 1..=10;

pub fn run(config: &ExperimentConfig, figure: &str) -> Result<(), CliError> {
    let csv_path = config
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{figure}.csv")));
    let (csv, fits) = match figure {
        "fig2" => width_curve()?,
        "fig3" => noise_curve()?,
        "fig4" => optimized_error_sweep(config, &[1], true)?,
        "fig5" => optimal_probe_sweep(config, &[1])?,
        "fig6" => optimized_error_sweep(config, &config.mode_sweep, false)?,
        "fig7" => optimal_probe_sweep(config, &config.mode_sweep)?,
        other => {
            return Err(CliError::Config(format!(
                "unknown figure {other}; expected fig2..fig7"
            )))
        }
    };
    write_atomic(&csv_path, &csv)?;
    let document = json!({
        "figure": figure,
        "csv": csv_path,
        "series": fits,
    });
    println!("{}", serde_json::to_string_pretty(&document).unwrap());
    Ok(())
}

fn log_linear_json(fit: &LinearFit) -> serde_json::Value {
    json!({
        "kind": "log_linear",
        "slope": fit.slope,
        "intercept": fit.intercept,
        "residual_rms": fit.residual_rms,
    })
}

fn power_json(fit: &PowerFit) -> serde_json::Value {
    json!({
        "kind": "power_law",
        "prefactor": fit.prefactor,
        "exponent": fit.exponent,
        "residual_rms": fit.residual_rms,
    })
}

/// Interval width vs probe count, exact rationals, with the log-linear fit.
fn width_curve() -> Result<(String, serde_json::Value), CliError> {
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for probes in PROBE_RANGE {
        let schedule = IntensitySchedule::equal_spacing(probes).map_err(CliError::from_core)?;
        let width = interval_delta_exact(&schedule)
            .map_err(CliError::from_core)?
            .value_f64();
        rows.push(vec![probes.to_string(), fmt_f64(width), "exact_rational".into()]);
        points.push((probes as f64, width.ln()));
    }
    let fit = linear_fit(&points).map_err(CliError::from_budget)?;
    let csv = render_csv(&["probe_count", "delta", "model"], &rows);
    Ok((csv, json!([{"model": "exact_rational", "fit": log_linear_json(&fit)}])))
}

/// Noise factor vs probe count with the log-linear fit.
fn noise_curve() -> Result<(String, serde_json::Value), CliError> {
    let mut rows = Vec::new();
    let mut points = Vec::new();
    for probes in PROBE_RANGE {
        let coefficients = lambda_equal_spacing(probes).map_err(CliError::from_core)?;
        let factor = f_factor(&coefficients, 1);
        rows.push(vec![probes.to_string(), fmt_f64(factor), "exact".into()]);
        points.push((probes as f64, factor.ln()));
    }
    let fit = linear_fit(&points).map_err(CliError::from_budget)?;
    let csv = render_csv(&["probe_count", "noise_factor", "model"], &rows);
    Ok((csv, json!([{"model": "exact", "fit": log_linear_json(&fit)}])))
}

fn sweep_budgets(config: &ExperimentConfig) -> Result<Vec<f64>, CliError> {
    let sweep = &config.sweep;
    if sweep.budget_min.is_nan()
        || sweep.budget_min <= 0.0
        || sweep.budget_max <= sweep.budget_min
        || sweep.points < 2
    {
        return Err(CliError::Infeasible(format!(
            "sweep range [{}, {}] with {} points is not usable",
            sweep.budget_min, sweep.budget_max, sweep.points
        )));
    }
    let lo = sweep.budget_min.ln();
    let hi = sweep.budget_max.ln();
    let step = (hi - lo) / (sweep.points - 1) as f64;
    Ok((0..sweep.points).map(|i| (lo + step * i as f64).exp()).collect())
}

/// Optimized total error vs budget for each mode count; optionally with the
/// single-photon 1/sqrt(M) baseline series.
fn optimized_error_sweep(
    config: &ExperimentConfig,
    mode_counts: &[usize],
    with_baseline: bool,
) -> Result<(String, serde_json::Value), CliError> {
    let budgets = sweep_budgets(config)?;
    let delta_model = config.delta_model();
    let noise_model = config.noise_model();
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for &modes in mode_counts {
        let label = format!("n={modes}");
        let mut points = Vec::new();
        for &m in &budgets {
            let result =
                optimize_probe_count(m, modes, &delta_model, &noise_model, config.probe_cap);
            match result {
                Ok((_, budget)) => {
                    rows.push(vec![fmt_f64(m), fmt_f64(budget.total_error), label.clone()]);
                    points.push((m, budget.total_error));
                }
                Err(error_budget::BudgetError::NoFeasibleL) => continue,
                Err(other) => return Err(CliError::from_budget(other)),
            }
        }
        if points.len() < 2 {
            return Err(CliError::Infeasible(format!(
                "no feasible sweep points for {label}"
            )));
        }
        let fit = power_fit(&points).map_err(CliError::from_budget)?;
        fits.push(json!({"model": label, "fit": power_json(&fit)}));
    }
    if with_baseline {
        for &m in &budgets {
            rows.push(vec![
                fmt_f64(m),
                fmt_f64(1.0 / m.sqrt()),
                "single_photon".into(),
            ]);
        }
        fits.push(json!({
            "model": "single_photon",
            "fit": {"kind": "power_law", "prefactor": 1.0, "exponent": 0.5, "residual_rms": 0.0},
        }));
    }
    let csv = render_csv(&["budget", "total_error", "model"], &rows);
    Ok((csv, serde_json::Value::Array(fits)))
}

/// Optimal probe count vs budget for each mode count, with a linear fit
/// against ln M.
fn optimal_probe_sweep(
    config: &ExperimentConfig,
    mode_counts: &[usize],
) -> Result<(String, serde_json::Value), CliError> {
    let budgets = sweep_budgets(config)?;
    let delta_model = config.delta_model();
    let noise_model = config.noise_model();
    let mut rows = Vec::new();
    let mut fits = Vec::new();
    for &modes in mode_counts {
        let label = format!("n={modes}");
        let mut points = Vec::new();
        for &m in &budgets {
            match optimize_probe_count(m, modes, &delta_model, &noise_model, config.probe_cap) {
                Ok((probe_count, _)) => {
                    rows.push(vec![fmt_f64(m), probe_count.to_string(), label.clone()]);
                    points.push((m.ln(), probe_count as f64));
                }
                Err(error_budget::BudgetError::NoFeasibleL) => continue,
                Err(other) => return Err(CliError::from_budget(other)),
            }
        }
        if points.len() < 2 {
            return Err(CliError::Infeasible(format!(
                "no feasible sweep points for {label}"
            )));
        }
        let fit = linear_fit(&points).map_err(CliError::from_budget)?;
        fits.push(json!({
            "model": label,
            "fit": {
                "kind": "linear_in_log_budget",
                "slope": fit.slope,
                "intercept": fit.intercept,
                "residual_rms": fit.residual_rms,
            },
        }));
    }
    let csv = render_csv(&["budget", "probe_count", "model"], &rows);
    Ok((csv, serde_json::Value::Array(fits)))
}

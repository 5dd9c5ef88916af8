//! The finite-statistics error model: per-gain statistical error, its
//! amplification through the decoy coefficients, and the total error
//! combining statistics with the estimation interval.

use decoy_core::{
    lambda_coefficients, multimode_delta_auto, ArithmeticMode, DecoyCoefficients,
    IntensitySchedule,
};

use crate::error::{BudgetError, Result};

/// Fitted constants for ln Delta_L vs L on equal spacing (slope, intercept).
pub const FITTED_DELTA: (f64, f64) = (-2.772, 3.718);
/// Fitted constants for ln f(L) vs L on equal spacing (slope, intercept).
pub const FITTED_NOISE: (f64, f64) = (0.67, 0.189);

/// How the estimation-error term is produced.
#[derive(Debug, Clone, PartialEq)]
pub enum DeltaModel {
    /// Exact width of this specific schedule (its probe count must match).
    ExactSchedule(IntensitySchedule),
    /// Exact width of the equal-spacing schedule at each probe count.
    ExactEqualSpacing,
    /// Fitted exponential: n * e^(slope L + intercept).
    Fitted { slope: f64, intercept: f64 },
}

/// How the noise-amplification factor f(L, n) is produced.
#[derive(Debug, Clone, PartialEq)]
pub enum NoiseModel {
    ExactSchedule(IntensitySchedule),
    ExactEqualSpacing,
    /// f(L, 1) = e^(slope L + intercept), raised to the mode count.
    Fitted { slope: f64, intercept: f64 },
}

/// Compact record of which model produced a term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelDescriptor {
    Exact,
    Fitted { slope: f64, intercept: f64 },
}

/// A fully assembled error budget for one (L, n, M) point.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorBudget {
    pub probe_count: usize,
    pub mode_count: usize,
    /// Total pulse budget; may be infinite for asymptotic studies.
    pub budget: f64,
    /// Per-gain statistical error sqrt((L+1)^n / M).
    pub stat_error_per_gain: f64,
    /// Noise amplification f(L, n).
    pub noise_factor: f64,
    /// Statistical error of the estimate: stat_error_per_gain * noise_factor.
    pub stat_error_estimate: f64,
    /// Estimation-interval term.
    pub estimation_error: f64,
    /// stat_error_estimate + estimation_error.
    pub total_error: f64,
    pub delta_model: ModelDescriptor,
    pub noise_model: ModelDescriptor,
}

/// Number of settings (L+1)^n as a float; saturates gracefully.
fn setting_grid(probe_count: usize, mode_count: usize) -> f64 {
    ((probe_count + 1) as f64).powi(mode_count as i32)
}

/// Per-gain statistical error sqrt((L+1)^n / M).
pub fn statistical_error_per_gain(
    probe_count: usize,
    mode_count: usize,
    budget: f64,
) -> Result<f64> {
    let required = setting_grid(probe_count, mode_count);
    if budget.is_infinite() {
        return Ok(0.0);
    }
    if budget.is_nan() || budget < required {
        return Err(BudgetError::BudgetTooSmall { budget, required });
    }
    Ok((required / budget).sqrt())
}

/// Noise amplification f(L, n) = f(L, 1)^n with f(L,1) the l2 norm of the
/// coefficients including lambda_0.
pub fn f_factor(coefficients: &DecoyCoefficients, mode_count: usize) -> f64 {
    let single: f64 = coefficients
        .lambdas()
        .iter()
        .map(|l| l * l)
        .sum::<f64>()
        .sqrt();
    single.powi(mode_count as i32)
}

fn schedule_for(probe_count: usize, schedule: Option<&IntensitySchedule>) -> Result<IntensitySchedule> {
    match schedule {
        Some(s) if s.probe_count() == probe_count => Ok(s.clone()),
        Some(s) => Err(BudgetError::DomainError(format!(
            "schedule has {} probes but the budget was requested for {probe_count}",
            s.probe_count()
        ))),
        None => Ok(IntensitySchedule::equal_spacing(probe_count)?),
    }
}

/// Assembles the error budget for one configuration.
pub fn total_error(
    probe_count: usize,
    mode_count: usize,
    budget: f64,
    delta_model: &DeltaModel,
    noise_model: &NoiseModel,
) -> Result<ErrorBudget> {
    if probe_count == 0 || mode_count == 0 {
        return Err(BudgetError::DomainError("probe and mode counts must be positive".into()));
    }
    let stat_error_per_gain = statistical_error_per_gain(probe_count, mode_count, budget)?;

    let (noise_factor, noise_descriptor) = match noise_model {
        NoiseModel::Fitted { slope, intercept } => {
            let single = (slope * probe_count as f64 + intercept).exp();
            (single.powi(mode_count as i32), ModelDescriptor::Fitted {
                slope: *slope,
                intercept: *intercept,
            })
        }
        NoiseModel::ExactSchedule(s) => {
            let schedule = schedule_for(probe_count, Some(s))?;
            let coefficients = lambda_coefficients(&schedule, ArithmeticMode::Float)?;
            (f_factor(&coefficients, mode_count), ModelDescriptor::Exact)
        }
        NoiseModel::ExactEqualSpacing => {
            let schedule = schedule_for(probe_count, None)?;
            let coefficients = lambda_coefficients(&schedule, ArithmeticMode::Float)?;
            (f_factor(&coefficients, mode_count), ModelDescriptor::Exact)
        }
    };

    let (estimation_error, delta_descriptor) = match delta_model {
        DeltaModel::Fitted { slope, intercept } => (
            mode_count as f64 * (slope * probe_count as f64 + intercept).exp(),
            ModelDescriptor::Fitted { slope: *slope, intercept: *intercept },
        ),
        DeltaModel::ExactSchedule(s) => {
            let schedule = schedule_for(probe_count, Some(s))?;
            (multimode_delta_auto(&schedule, mode_count)?, ModelDescriptor::Exact)
        }
        DeltaModel::ExactEqualSpacing => {
            let schedule = schedule_for(probe_count, None)?;
            (multimode_delta_auto(&schedule, mode_count)?, ModelDescriptor::Exact)
        }
    };

    let stat_error_estimate = stat_error_per_gain * noise_factor;
    Ok(ErrorBudget {
        probe_count,
        mode_count,
        budget,
        stat_error_per_gain,
        noise_factor,
        stat_error_estimate,
        estimation_error,
        total_error: stat_error_estimate + estimation_error,
        delta_model: delta_descriptor,
        noise_model: noise_descriptor,
    })
}

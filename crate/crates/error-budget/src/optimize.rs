//! Probe-count optimization: exhaustive scan of the total error over L.

use crate::budget::{total_error, DeltaModel, ErrorBudget, NoiseModel};
use crate::error::{BudgetError, Result};

/// Upper limit of the scan when the caller does not impose one.
pub const DEFAULT_PROBE_CAP: usize = 60;

/// Minimizes the total error over L = 1..=probe_cap subject to the budget
/// feasibility (L+1)^n <= M. Ties break toward smaller L.
///
/// The models must describe a family over L, so `ExactSchedule` (one fixed
/// schedule) is rejected here; use `ExactEqualSpacing` or `Fitted`.
pub fn optimize_probe_count(
    budget: f64,
    mode_count: usize,
    delta_model: &DeltaModel,
    noise_model: &NoiseModel,
    probe_cap: usize,
) -> Result<(usize, ErrorBudget)> {
    if matches!(delta_model, DeltaModel::ExactSchedule(_))
        || matches!(noise_model, NoiseModel::ExactSchedule(_))
    {
        return Err(BudgetError::DomainError(
            "probe-count optimization needs a schedule family, not a fixed schedule".into(),
        ));
    }
    let mut best: Option<(usize, ErrorBudget)> = None;
    for probe_count in 1..=probe_cap.max(1) {
        let feasible =
            budget.is_infinite() || ((probe_count + 1) as f64).powi(mode_count as i32) <= budget;
        if !feasible {
            break;
        }
        let candidate = total_error(probe_count, mode_count, budget, delta_model, noise_model)?;
        match &best {
            Some((_, incumbent)) if incumbent.total_error <= candidate.total_error => {}
            _ => best = Some((probe_count, candidate)),
        }
    }
    best.ok_or(BudgetError::NoFeasibleL)
}

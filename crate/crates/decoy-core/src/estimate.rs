//! Single-photon yield estimators for one or many input modes.
//!
//! The single-mode estimate is the signed-weight contraction of the gains,
//! `sum_j w_j A_{mu_j}`; for n modes the weight tensor factorizes as the
//! product of per-mode weights. The rigorous interval sits on one side of
//! the estimate: above the truth for odd L, below it for even L.

use num_traits::Zero;

use crate::coefficients::{lambda_coefficients, ArithmeticMode};
use crate::delta::{interval_delta_auto, multimode_delta_auto};
use crate::error::{DecoyError, Result};
use crate::gains::GainRecord;
use crate::rational::Rational;
use crate::schedule::IntensitySchedule;

/// Default cap on the dense gain tensor (L+1)^n; the probe grid grows
/// exponentially with the mode count and the cap makes that explicit.
pub const DEFAULT_TENSOR_CAP: usize = 1_000_000;

/// A yield estimate with its rigorous interval.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    /// Raw estimate, before any clamping; may exceed [0, 1].
    pub estimate: f64,
    /// Raw one-sided interval: [estimate - delta, estimate] for odd L,
    /// [estimate, estimate + delta] for even L.
    pub raw_lo: f64,
    pub raw_hi: f64,
    /// The raw interval intersected with [0, 1].
    pub lo: f64,
    pub hi: f64,
    /// Interval width Delta_L (or its n-mode generalization).
    pub delta: f64,
    pub mode_count: usize,
}

impl EstimateReport {
    fn build(estimate: f64, delta: f64, probe_count: usize, mode_count: usize) -> Self {
        let (raw_lo, raw_hi) = if probe_count % 2 == 1 {
            (estimate - delta, estimate)
        } else {
            (estimate, estimate + delta)
        };
        EstimateReport {
            estimate,
            raw_lo,
            raw_hi,
            lo: raw_lo.clamp(0.0, 1.0),
            hi: raw_hi.clamp(0.0, 1.0),
            delta,
            mode_count,
        }
    }

    /// True when the clamped interval contains the value.
    pub fn contains(&self, y: f64) -> bool {
        self.lo <= y && y <= self.hi
    }

    /// True when the raw (unclamped) interval contains the value.
    pub fn raw_contains(&self, y: f64) -> bool {
        self.raw_lo <= y && y <= self.raw_hi
    }
}

/// Estimates the single-photon yield from single-mode gains.
pub fn estimate_y1(gains: &GainRecord, schedule: &IntensitySchedule) -> Result<EstimateReport> {
    if gains.mode_count() != 1 {
        return Err(DecoyError::ScheduleMismatch(format!(
            "estimate_y1 expects single-mode gains, record is {}-mode",
            gains.mode_count()
        )));
    }
    let a = gains.dense_tensor(schedule)?;
    let weights = lambda_coefficients(schedule, ArithmeticMode::Float)?.signed_weights();
    let estimate: f64 = weights.iter().zip(&a).map(|(w, a)| w * a).sum();
    let delta = interval_delta_auto(schedule)?;
    Ok(EstimateReport::build(estimate, delta, schedule.probe_count(), 1))
}

/// Exact-rational single-mode estimate from exact gains, ordered as the
/// schedule orders its intensities (vacuum first).
pub fn estimate_y1_exact(a_values: &[Rational], schedule: &IntensitySchedule) -> Result<Rational> {
    if a_values.len() != schedule.setting_count() {
        return Err(DecoyError::ScheduleMismatch(format!(
            "{} gain values for {} schedule settings",
            a_values.len(),
            schedule.setting_count()
        )));
    }
    let weights = lambda_coefficients(schedule, ArithmeticMode::Exact)?
        .signed_weights_exact()
        .expect("exact mode");
    let mut acc = Rational::zero();
    for (w, a) in weights.iter().zip(a_values) {
        acc += w * a;
    }
    Ok(acc)
}

/// Estimates the n-mode coincidence yield for single photons in every mode.
pub fn multimode_estimate(
    gains: &GainRecord,
    schedule: &IntensitySchedule,
    mode_count: usize,
) -> Result<EstimateReport> {
    multimode_estimate_with_cap(gains, schedule, mode_count, DEFAULT_TENSOR_CAP)
}

/// As [`multimode_estimate`] with an explicit tensor cap.
pub fn multimode_estimate_with_cap(
    gains: &GainRecord,
    schedule: &IntensitySchedule,
    mode_count: usize,
    tensor_cap: usize,
) -> Result<EstimateReport> {
    if mode_count == 0 || gains.mode_count() != mode_count {
        return Err(DecoyError::ScheduleMismatch(format!(
            "record is {}-mode, estimate requested for {} modes",
            gains.mode_count(),
            mode_count
        )));
    }
    let settings = schedule.setting_count();
    let entries = settings
        .checked_pow(mode_count as u32)
        .ok_or(DecoyError::ModeCountOverflow { entries: usize::MAX, cap: tensor_cap })?;
    if entries > tensor_cap {
        return Err(DecoyError::ModeCountOverflow { entries, cap: tensor_cap });
    }
    let a = gains.dense_tensor(schedule)?;
    let weights = lambda_coefficients(schedule, ArithmeticMode::Float)?.signed_weights();

    let mut estimate = 0.0;
    let mut index = vec![0usize; mode_count];
    for (flat, a_value) in a.iter().enumerate() {
        let mut rest = flat;
        let mut weight = 1.0;
        for slot in (0..mode_count).rev() {
            index[slot] = rest % settings;
            rest /= settings;
            weight *= weights[index[slot]];
        }
        estimate += weight * a_value;
    }
    let delta = multimode_delta_auto(schedule, mode_count)?;
    Ok(EstimateReport::build(estimate, delta, schedule.probe_count(), mode_count))
}

//! Rigorous widths of the estimation interval.
//!
//! The width for a schedule with L probes is
//!
//! ```text
//! Delta_L = (-1)^(L+1) * (sum_j w_j e^(mu_j) - 1)
//! ```
//!
//! evaluated either in floats (with a cancellation certificate) or in exact
//! rationals (with certified exponential tails). The n-mode width follows
//! from S = 1 + (-1)^(L+1) Delta_L as |S^n - 1|.

use num_traits::{One, Signed, Zero};

use crate::coefficients::{lambda_coefficients, ArithmeticMode};
use crate::error::{DecoyError, Result};
use crate::rational::{exp_certified, pow10_inverse, Certified, Rational};
use crate::schedule::IntensitySchedule;

/// Relative accuracy float mode must certify before returning a width;
/// beyond it the caller is told to switch to exact-rational arithmetic.
/// Equal-spacing schedules pass through L = 8 and exhaust at L >= 9.
pub const FLOAT_CERTIFY_RELATIVE: f64 = 1e-3;

/// Interval width Delta_L for a schedule, in the requested arithmetic.
pub fn interval_delta(schedule: &IntensitySchedule, mode: ArithmeticMode) -> Result<f64> {
    match mode {
        ArithmeticMode::Float => interval_delta_f64(schedule),
        ArithmeticMode::Exact => {
            let certified = interval_delta_exact(schedule)?;
            Ok(certified.value_f64())
        }
    }
}

/// Float width plus a rigorous bound on its rounding error. The bound scales
/// with the magnitude of the alternating terms, not with the result, which
/// is exactly how cancellation destroys accuracy here.
pub fn interval_delta_float_certified(schedule: &IntensitySchedule) -> Result<(f64, f64)> {
    let coefficients = lambda_coefficients(schedule, ArithmeticMode::Float)?;
    let weights = coefficients.signed_weights();
    let mus = schedule.intensities_f64();
    let mut sum = NeumaierSum::default();
    let mut magnitude = 1.0;
    for (w, mu) in weights.iter().zip(&mus) {
        let term = w * mu.exp();
        sum.add(term);
        magnitude += term.abs();
    }
    sum.add(-1.0);
    let sign = if schedule.probe_count() % 2 == 1 { 1.0 } else { -1.0 };
    let delta = sign * sum.total();
    let uncertainty = 4.0 * f64::EPSILON * magnitude;
    Ok((delta, uncertainty))
}

/// Float path; errors with `PrecisionExhausted` when alternating-sum
/// cancellation eats the certified digits.
fn interval_delta_f64(schedule: &IntensitySchedule) -> Result<f64> {
    let (delta, uncertainty) = interval_delta_float_certified(schedule)?;
    if !delta.is_finite() || delta <= 0.0 || uncertainty > FLOAT_CERTIFY_RELATIVE * delta {
        return Err(DecoyError::PrecisionExhausted { tolerance: FLOAT_CERTIFY_RELATIVE });
    }
    Ok(delta)
}

/// Exact-rational path: exponentials as partial sums, their certified tails
/// propagated through the weights into the returned error bound. The tail
/// budget adapts until the bound is far below the value itself.
pub fn interval_delta_exact(schedule: &IntensitySchedule) -> Result<Certified> {
    let coefficients = lambda_coefficients(schedule, ArithmeticMode::Exact)?;
    let weights = coefficients.signed_weights_exact().expect("exact mode");
    for digits in [30u32, 60, 120, 240] {
        let rel_tol = pow10_inverse(digits);
        let mut sum = -Rational::one();
        let mut bound = Rational::zero();
        for (w, mu) in weights.iter().zip(schedule.intensities_exact()) {
            let e = exp_certified(mu, &rel_tol);
            sum += w * &e.value;
            bound += w.abs() * &e.error_bound;
        }
        let value = if schedule.probe_count() % 2 == 1 { sum } else { -sum };
        if value > &bound * Rational::from_integer(2.into()) {
            return Ok(Certified { value, error_bound: bound });
        }
    }
    Err(DecoyError::DomainError(
        "interval width is below the exact-mode certification floor (~1e-235)".into(),
    ))
}

/// Float width with automatic fallback to the exact path when float
/// cancellation cannot be certified.
pub fn interval_delta_auto(schedule: &IntensitySchedule) -> Result<f64> {
    match interval_delta_f64(schedule) {
        Ok(v) => Ok(v),
        Err(DecoyError::PrecisionExhausted { .. }) => {
            Ok(interval_delta_exact(schedule)?.value_f64())
        }
        Err(e) => Err(e),
    }
}

/// The closed-form widths for zero, one, and two non-vacuum probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormKind {
    /// Single probe, no vacuum: (e^mu - mu)/mu.
    SingleProbe,
    /// Probes {nu, mu}: (e^mu - e^nu)/(mu - nu) - 1.
    VacuumPlusOne,
    /// Probes {0, nu, mu}: (mu nu/(mu - nu)) (g(mu) - g(nu)),
    /// g(x) = (e^x - 1 - x)/x^2.
    VacuumPlusTwo,
}

/// Evaluates a closed-form interval width. `nu` defaults to 0 where it
/// applies; the removable nu -> 0 singularity of the two-probe form is
/// evaluated by series.
pub fn closed_form_delta(kind: ClosedFormKind, mu: f64, nu: Option<f64>) -> Result<f64> {
    if mu.is_nan() || mu <= 0.0 {
        return Err(DecoyError::DomainError(format!("mu must be positive, got {mu}")));
    }
    let nu = nu.unwrap_or(0.0);
    match kind {
        ClosedFormKind::SingleProbe => Ok((mu.exp() - mu) / mu),
        ClosedFormKind::VacuumPlusOne => {
            check_nu(mu, nu)?;
            Ok((mu.exp() - nu.exp()) / (mu - nu) - 1.0)
        }
        ClosedFormKind::VacuumPlusTwo => {
            check_nu(mu, nu)?;
            Ok(mu * nu / (mu - nu) * (exp_remainder_quotient(mu) - exp_remainder_quotient(nu)))
        }
    }
}

fn check_nu(mu: f64, nu: f64) -> Result<()> {
    if nu.is_nan() || nu < 0.0 || nu >= mu {
        return Err(DecoyError::DomainError(format!(
            "nu must satisfy 0 <= nu < mu, got nu={nu}, mu={mu}"
        )));
    }
    Ok(())
}

/// g(x) = (e^x - 1 - x)/x^2 with the x -> 0 limit 1/2 taken by a six-term
/// series below 1e-4, where the direct quotient loses digits to 0/0.
fn exp_remainder_quotient(x: f64) -> f64 {
    if x < 1e-4 {
        let mut acc = 0.0;
        let mut term = 0.5; // 1/2!
        for k in 2..8u32 {
            acc += term;
            term *= x / (k + 1) as f64;
        }
        acc
    } else {
        (x.exp() - 1.0 - x) / (x * x)
    }
}

/// Interval width for n modes probed with the same schedule.
pub fn multimode_delta(
    schedule: &IntensitySchedule,
    mode_count: usize,
    mode: ArithmeticMode,
) -> Result<f64> {
    assert!(mode_count >= 1);
    match mode {
        ArithmeticMode::Float => {
            let delta = interval_delta_f64(schedule)?;
            Ok(compose_modes(delta, schedule.probe_count(), mode_count))
        }
        ArithmeticMode::Exact => Ok(multimode_delta_exact(schedule, mode_count)?.value_f64()),
    }
}

/// Exact n-mode width |S^n - 1| with the exponential tails propagated.
pub fn multimode_delta_exact(
    schedule: &IntensitySchedule,
    mode_count: usize,
) -> Result<Certified> {
    let single = interval_delta_exact(schedule)?;
    let odd = schedule.probe_count() % 2 == 1;
    let s = if odd { Rational::one() + &single.value } else { Rational::one() - &single.value };
    let value = (num_traits::pow::pow(s.clone(), mode_count) - Rational::one()).abs();
    // |S^n - S'^n| <= n (S + tail)^(n-1) tail for the perturbed base.
    let upper = &s + &single.error_bound;
    let bound = Rational::from_integer(mode_count.into())
        * num_traits::pow::pow(upper, mode_count - 1)
        * &single.error_bound;
    Ok(Certified { value, error_bound: bound })
}

/// Float n-mode width with automatic exact fallback.
pub fn multimode_delta_auto(schedule: &IntensitySchedule, mode_count: usize) -> Result<f64> {
    match multimode_delta(schedule, mode_count, ArithmeticMode::Float) {
        Ok(v) => Ok(v),
        Err(DecoyError::PrecisionExhausted { .. }) => {
            multimode_delta(schedule, mode_count, ArithmeticMode::Exact)
        }
        Err(e) => Err(e),
    }
}

/// (1 + d)^n - 1 or 1 - (1 - d)^n depending on parity, kept accurate for
/// tiny d via log1p/expm1.
fn compose_modes(delta: f64, probe_count: usize, mode_count: usize) -> f64 {
    let n = mode_count as f64;
    if probe_count % 2 == 1 {
        (n * delta.ln_1p()).exp_m1()
    } else {
        -(n * (-delta).ln_1p()).exp_m1()
    }
}

#[derive(Default)]
struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

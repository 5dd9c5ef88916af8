//! The remainder expansion behind the estimation interval, computed from
//! the first inverse-Vandermonde row in exact rationals.
//!
//! The estimator's excess over the truth is sum_{k>L} c_k Y_k with
//!
//! ```text
//! c_k = sum_j M_{1,j} mu_j^(k-1) / k!
//! ```
//!
//! Every c_k carries the sign (-1)^(L+1), so the interval width is the
//! absolute series sum; the tail beyond the truncation K is certified by a
//! geometric bound on the sign-free majorant d_k = sum_j |M_{1,j}|
//! mu_j^(k-1) / k!, whose term ratio is at most mu_L/(k+1).

use decoy_core::{inverse_vandermonde, ArithmeticMode, Certified, IntensitySchedule, Rational};
use num_traits::{One, Signed, Zero};

use crate::error::{OracleError, Result};

/// Exact remainder coefficients c_{L+1} ..= c_K plus a certified bound on
/// everything beyond K.
#[derive(Debug, Clone, PartialEq)]
pub struct RemainderExpansion {
    schedule: IntensitySchedule,
    truncation: usize,
    terms: Vec<(usize, Rational)>,
    certified_tail: Rational,
}

impl RemainderExpansion {
    pub fn schedule(&self) -> &IntensitySchedule {
        &self.schedule
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// (k, c_k) pairs for k = L+1 ..= K.
    pub fn terms(&self) -> &[(usize, Rational)] {
        &self.terms
    }

    /// Rigorous bound on |sum_{k>K} c_k|.
    pub fn certified_tail(&self) -> &Rational {
        &self.certified_tail
    }

    /// |sum of computed terms|, a lower bound on the interval width.
    pub fn partial_width(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (_, c)| acc + c).abs()
    }
}

/// Expands the remainder through order K, asserting the parity-sign lemma
/// term by term.
pub fn remainder_expansion(
    schedule: &IntensitySchedule,
    truncation: usize,
) -> Result<RemainderExpansion> {
    let probe_count = schedule.probe_count();
    if truncation <= probe_count {
        return Err(OracleError::TruncationTooSmall { truncation, probe_count });
    }
    let mu_max = schedule.intensity_exact(probe_count).clone();
    // Geometric tail needs ratio mu_L/(K+1) <= 1/2.
    if Rational::from_integer(2.into()) * &mu_max
        > Rational::from_integer(((truncation + 1) as i64).into())
    {
        return Err(OracleError::TailNotCertifiable { truncation });
    }

    let inverse = inverse_vandermonde(schedule, ArithmeticMode::Exact)?;
    let first_row: Vec<Rational> =
        (0..probe_count).map(|j| inverse.entry_exact(0, j).unwrap().clone()).collect();
    let probes: Vec<Rational> =
        (1..=probe_count).map(|j| schedule.intensity_exact(j).clone()).collect();

    let expected_positive = probe_count % 2 == 1;
    let mut terms = Vec::with_capacity(truncation - probe_count);
    // Running powers mu_j^(k-1) and factorial k!.
    let mut powers: Vec<Rational> =
        probes.iter().map(|mu| num_traits::pow::pow(mu.clone(), probe_count)).collect();
    let mut factorial = Rational::one();
    for i in 1..=(probe_count + 1) as i64 {
        factorial *= Rational::from_integer(i.into());
    }
    let mut majorant_numerator = Rational::zero(); // sum_j |M1j| mu_j^(k-1) at k = K
    for k in (probe_count + 1)..=truncation {
        let mut numerator = Rational::zero();
        let mut majorant = Rational::zero();
        for (j, m1j) in first_row.iter().enumerate() {
            let contribution = m1j * &powers[j];
            majorant += contribution.abs();
            numerator += contribution;
        }
        let coefficient = &numerator / &factorial;
        assert_eq!(
            coefficient.is_positive(),
            expected_positive,
            "parity-sign lemma violated at k={k}"
        );
        terms.push((k, coefficient));
        if k == truncation {
            majorant_numerator = majorant;
        }
        // Advance to k+1.
        for (power, mu) in powers.iter_mut().zip(&probes) {
            *power = &*power * mu;
        }
        factorial *= Rational::from_integer(((k + 1) as i64).into());
    }

    // d_K = majorant / K!; factorial currently holds (K+1)!.
    let k_factorial = &factorial / Rational::from_integer(((truncation + 1) as i64).into());
    let d_k = majorant_numerator / k_factorial;
    let first_ratio = &mu_max / Rational::from_integer(((truncation + 1) as i64).into());
    let later_ratio = &mu_max / Rational::from_integer(((truncation + 2) as i64).into());
    let certified_tail = d_k * first_ratio / (Rational::one() - later_ratio);

    Ok(RemainderExpansion {
        schedule: schedule.clone(),
        truncation,
        terms,
        certified_tail,
    })
}

/// Interval width straight from the remainder series: the partial sum of
/// |c_k| with the certified tail as its error bound.
pub fn oracle_delta(schedule: &IntensitySchedule, truncation: usize) -> Result<Certified> {
    let expansion = remainder_expansion(schedule, truncation)?;
    Ok(Certified {
        value: expansion.partial_width(),
        error_bound: expansion.certified_tail,
    })
}

/// As [`oracle_delta`], growing the truncation until the tail is below
/// `digits` decimal orders of the value itself.
pub fn oracle_delta_to_digits(schedule: &IntensitySchedule, digits: u32) -> Result<Certified> {
    let mut truncation = (schedule.probe_count() + 8).max(2 * schedule.max_intensity() as usize + 4);
    let tolerance = decoy_core::rational::pow10_inverse(digits);
    loop {
        let certified = oracle_delta(schedule, truncation)?;
        if certified.error_bound <= &certified.value * &tolerance {
            return Ok(certified);
        }
        truncation += 16;
        assert!(truncation < 20_000, "oracle truncation runaway");
    }
}

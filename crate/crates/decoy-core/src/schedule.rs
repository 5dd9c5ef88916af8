//! Probe intensity schedules: the vacuum intensity plus L strictly
//! increasing non-zero intensities.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{DecoyError, Result};
use crate::rational::{rational_from_f64, rational_int, Rational};

/// Relative tolerance below which two intensities are considered duplicates.
/// The Vandermonde inverse diverges as intensities coalesce, so we fail fast.
pub const DUPLICATE_RELATIVE_TOLERANCE: f64 = 1e-12;

/// An ordered probe schedule {0 = mu_0 < mu_1 < ... < mu_L}.
///
/// Intensities are stored exactly as rationals so that equal-spacing
/// schedules like {0, 1/3, 2/3, 1} survive exact-mode arithmetic without
/// binary rounding. Float views are derived on demand.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensitySchedule {
    intensities: Vec<Rational>,
}

impl IntensitySchedule {
    /// Validates raw intensities into a schedule: sorts, prepends the
    /// mandatory vacuum if absent, and rejects negatives and duplicates.
    pub fn validate(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(DecoyError::EmptySchedule);
        }
        let mut values = Vec::with_capacity(raw.len() + 1);
        for &x in raw {
            if !x.is_finite() {
                return Err(DecoyError::NonFiniteIntensity);
            }
            if x < 0.0 {
                return Err(DecoyError::NegativeIntensity(x));
            }
            values.push(rational_from_f64(x).expect("finite f64"));
        }
        Self::from_rationals(values)
    }

    /// Builds a schedule from exact intensities; the vacuum is prepended if
    /// absent and the input may arrive in any order.
    pub fn from_rationals(mut values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(DecoyError::EmptySchedule);
        }
        if values.iter().any(|v| v.is_negative()) {
            let bad = values
                .iter()
                .find(|v| v.is_negative())
                .and_then(|v| v.to_f64())
                .unwrap_or(f64::NAN);
            return Err(DecoyError::NegativeIntensity(bad));
        }
        values.sort();
        if !values[0].is_zero() {
            values.insert(0, Rational::zero());
        }
        for pair in values.windows(2) {
            if duplicate_within_tolerance(&pair[0], &pair[1]) {
                return Err(DecoyError::DuplicateIntensity(
                    pair[0].to_f64().unwrap_or(f64::NAN),
                    pair[1].to_f64().unwrap_or(f64::NAN),
                ));
            }
        }
        if values.len() < 2 {
            return Err(DecoyError::EmptySchedule);
        }
        Ok(IntensitySchedule { intensities: values })
    }

    /// The equal-spacing family mu_j = j/L for j = 0..=L, exact.
    pub fn equal_spacing(probe_count: usize) -> Result<Self> {
        if probe_count == 0 {
            return Err(DecoyError::EmptySchedule);
        }
        let l = probe_count as i64;
        let values = (0..=l)
            .map(|j| rational_int(j) / rational_int(l))
            .collect();
        Self::from_rationals(values)
    }

    /// Number of non-zero probes, L.
    pub fn probe_count(&self) -> usize {
        self.intensities.len() - 1
    }

    /// Number of intensities including the vacuum, L + 1.
    pub fn setting_count(&self) -> usize {
        self.intensities.len()
    }

    pub fn intensity(&self, index: usize) -> f64 {
        self.intensities[index].to_f64().expect("schedule intensity fits f64")
    }

    pub fn intensity_exact(&self, index: usize) -> &Rational {
        &self.intensities[index]
    }

    pub fn intensities_f64(&self) -> Vec<f64> {
        (0..self.setting_count()).map(|j| self.intensity(j)).collect()
    }

    pub fn intensities_exact(&self) -> &[Rational] {
        &self.intensities
    }

    /// The largest intensity, mu_L.
    pub fn max_intensity(&self) -> f64 {
        self.intensity(self.setting_count() - 1)
    }

    /// Resolves a raw intensity to its schedule index, within the duplicate
    /// tolerance. The vacuum only matches exactly zero.
    pub fn resolve(&self, raw: f64) -> Option<usize> {
        if raw == 0.0 {
            return Some(0);
        }
        (1..self.setting_count()).find(|&j| {
            let mu = self.intensity(j);
            (raw - mu).abs() <= DUPLICATE_RELATIVE_TOLERANCE * mu.abs().max(raw.abs())
        })
    }
}

fn duplicate_within_tolerance(smaller: &Rational, larger: &Rational) -> bool {
    // Relative check |a - b| <= tol * max(|a|, |b|), exact in rationals.
    let diff = larger - smaller;
    let tol = BigRational::new(1.into(), 1_000_000_000_000u64.into());
    diff <= tol * larger.abs().max(smaller.abs())
}

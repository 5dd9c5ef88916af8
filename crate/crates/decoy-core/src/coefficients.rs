//! Decoy coefficients: the weights that turn observed gains into a
//! single-photon yield estimate.
//!
//! For a schedule {0, mu_1, ..., mu_L} the coefficients are
//!
//! ```text
//! lambda_j = (1/mu_j) * prod_{n != j} mu_n / (mu_n - mu_j)   (made positive)
//! lambda_0 = sum_j (-1)^j lambda_j
//! ```
//!
//! and the estimator applies them with alternating signs; see
//! [`DecoyCoefficients::signed_weight`].

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{DecoyError, Result};
use crate::rational::Rational;
use crate::schedule::IntensitySchedule;

/// Arithmetic backing for coefficient and interval computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithmeticMode {
    /// Fast 64-bit floats; subject to catastrophic cancellation for large L.
    Float,
    /// Arbitrary-precision rationals; no rounding anywhere.
    Exact,
}

#[derive(Debug, Clone, PartialEq)]
enum Values {
    Float(Vec<f64>),
    Exact(Vec<Rational>),
}

/// The coefficients lambda_0 ..= lambda_L attached to a schedule.
///
/// lambda_j > 0 for j >= 1; lambda_0 carries the sign produced by the
/// alternating sum (negative for every schedule we have encountered).
#[derive(Debug, Clone, PartialEq)]
pub struct DecoyCoefficients {
    schedule: IntensitySchedule,
    values: Values,
}

impl DecoyCoefficients {
    pub fn schedule(&self) -> &IntensitySchedule {
        &self.schedule
    }

    pub fn probe_count(&self) -> usize {
        self.schedule.probe_count()
    }

    pub fn mode(&self) -> ArithmeticMode {
        match self.values {
            Values::Float(_) => ArithmeticMode::Float,
            Values::Exact(_) => ArithmeticMode::Exact,
        }
    }

    /// lambda_j as a float (converted from the exact value in exact mode).
    pub fn lambda(&self, j: usize) -> f64 {
        match &self.values {
            Values::Float(v) => v[j],
            Values::Exact(v) => v[j].to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn lambdas(&self) -> Vec<f64> {
        (0..=self.probe_count()).map(|j| self.lambda(j)).collect()
    }

    pub fn lambda_exact(&self, j: usize) -> Option<&Rational> {
        match &self.values {
            Values::Float(_) => None,
            Values::Exact(v) => Some(&v[j]),
        }
    }

    /// The signed weight the estimator applies to A_{mu_j}:
    /// w_0 = lambda_0 and w_j = (-1)^(j+1) lambda_j for j >= 1.
    pub fn signed_weight(&self, j: usize) -> f64 {
        let sign = if j == 0 || j % 2 == 1 { 1.0 } else { -1.0 };
        sign * self.lambda(j)
    }

    pub fn signed_weights(&self) -> Vec<f64> {
        (0..=self.probe_count()).map(|j| self.signed_weight(j)).collect()
    }

    pub fn signed_weights_exact(&self) -> Option<Vec<Rational>> {
        match &self.values {
            Values::Float(_) => None,
            Values::Exact(v) => Some(
                v.iter()
                    .enumerate()
                    .map(|(j, lam)| {
                        if j == 0 || j % 2 == 1 {
                            lam.clone()
                        } else {
                            -lam.clone()
                        }
                    })
                    .collect(),
            ),
        }
    }
}

/// Computes the decoy coefficients for an arbitrary schedule.
pub fn lambda_coefficients(
    schedule: &IntensitySchedule,
    mode: ArithmeticMode,
) -> Result<DecoyCoefficients> {
    match mode {
        ArithmeticMode::Exact => {
            let mus = schedule.intensities_exact();
            let lambdas = lambda_kernel_exact(&mus[1..]);
            Ok(DecoyCoefficients { schedule: schedule.clone(), values: Values::Exact(lambdas) })
        }
        ArithmeticMode::Float => {
            let mus = schedule.intensities_f64();
            let lambdas = lambda_kernel_f64(&mus[1..]);
            if lambdas.iter().any(|l| !l.is_finite()) {
                return Err(DecoyError::OverflowInFloatMode);
            }
            Ok(DecoyCoefficients { schedule: schedule.clone(), values: Values::Float(lambdas) })
        }
    }
}

/// Coefficients for the equal-spacing schedule mu_j = j/L, via the binomial
/// closed form lambda_j = (L/j) C(L, j). Exact by construction; agrees with
/// [`lambda_coefficients`] on the same schedule bit for bit.
pub fn lambda_equal_spacing(probe_count: usize) -> Result<DecoyCoefficients> {
    let schedule = IntensitySchedule::equal_spacing(probe_count)?;
    let l = probe_count;
    let mut lambdas = vec![Rational::zero()];
    for j in 1..=l {
        let choose = binomial(BigInt::from(l), BigInt::from(j));
        lambdas.push(Rational::new(BigInt::from(l) * choose, BigInt::from(j)));
    }
    lambdas[0] = alternating_sum(&lambdas[1..]);
    Ok(DecoyCoefficients { schedule, values: Values::Exact(lambdas) })
}

fn alternating_sum(lambdas: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (idx, lam) in lambdas.iter().enumerate() {
        let j = idx + 1;
        if j % 2 == 0 {
            acc += lam;
        } else {
            acc -= lam;
        }
    }
    acc
}

fn lambda_kernel_exact(probes: &[Rational]) -> Vec<Rational> {
    let l = probes.len();
    let mut lambdas = vec![Rational::zero(); l + 1];
    for j in 1..=l {
        let mu_j = &probes[j - 1];
        let mut value = Rational::one() / mu_j;
        for (n, mu_n) in probes.iter().enumerate() {
            if n + 1 != j {
                value = value * mu_n / (mu_n - mu_j);
            }
        }
        // The product of the (mu_n - mu_j) signs is (-1)^(j-1), which the
        // (-1)^(j+1) prefactor cancels; lambda_j is positive.
        lambdas[j] = value.abs();
        debug_assert!(lambdas[j].is_positive());
    }
    lambdas[0] = alternating_sum(&lambdas[1..]);
    lambdas
}

fn lambda_kernel_f64(probes: &[f64]) -> Vec<f64> {
    let l = probes.len();
    let mut lambdas = vec![0.0; l + 1];
    for j in 1..=l {
        let mu_j = probes[j - 1];
        let mut value = 1.0 / mu_j;
        for (n, &mu_n) in probes.iter().enumerate() {
            if n + 1 != j {
                value *= mu_n / (mu_n - mu_j);
            }
        }
        lambdas[j] = value.abs();
    }
    lambdas[0] = lambdas[1..]
        .iter()
        .enumerate()
        .map(|(idx, lam)| if (idx + 1) % 2 == 0 { *lam } else { -lam })
        .sum();
    lambdas
}

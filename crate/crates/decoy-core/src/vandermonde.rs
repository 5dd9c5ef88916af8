//! Closed-form inverse of the L x L Vandermonde matrix built from the
//! non-zero probe intensities.
//!
//! Row i (1-indexed) of the inverse is
//!
//! ```text
//! M[i][j] = (-1)^(i-1) * e_{L-i}(mu's without mu_j) / prod_{l != j} (mu_l - mu_j)
//! ```
//!
//! where e_m is the elementary symmetric polynomial of degree m.

use num_traits::{ToPrimitive, Zero};

use crate::coefficients::ArithmeticMode;
use crate::error::{DecoyError, Result};
use crate::rational::Rational;
use crate::schedule::IntensitySchedule;

#[derive(Debug, Clone, PartialEq)]
enum Entries {
    Float(Vec<f64>),
    Exact(Vec<Rational>),
}

/// Inverse of the Vandermonde matrix V'[j][i] = mu_j^(i-1), row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeInverse {
    schedule: IntensitySchedule,
    dim: usize,
    entries: Entries,
}

impl VandermondeInverse {
    pub fn schedule(&self) -> &IntensitySchedule {
        &self.schedule
    }

    /// Matrix dimension, equal to the probe count L.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> ArithmeticMode {
        match self.entries {
            Entries::Float(_) => ArithmeticMode::Float,
            Entries::Exact(_) => ArithmeticMode::Exact,
        }
    }

    /// Entry M[row][col], 0-indexed.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.dim && col < self.dim);
        match &self.entries {
            Entries::Float(v) => v[row * self.dim + col],
            Entries::Exact(v) => v[row * self.dim + col].to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn entry_exact(&self, row: usize, col: usize) -> Option<&Rational> {
        assert!(row < self.dim && col < self.dim);
        match &self.entries {
            Entries::Float(_) => None,
            Entries::Exact(v) => Some(&v[row * self.dim + col]),
        }
    }

    /// First row M[0][..]; these are the weights behind the estimator.
    pub fn first_row(&self) -> Vec<f64> {
        (0..self.dim).map(|j| self.entry(0, j)).collect()
    }

    /// Largest absolute deviation of M * V' from the identity, evaluated in
    /// floats. Zero up to rounding in exact mode.
    pub fn identity_residual(&self) -> f64 {
        let l = self.dim;
        let mus: Vec<f64> = self.schedule.intensities_f64()[1..].to_vec();
        let mut worst: f64 = 0.0;
        for i in 0..l {
            for k in 0..l {
                let mut acc = 0.0;
                for (j, mu) in mus.iter().enumerate() {
                    acc += self.entry(i, j) * mu.powi(k as i32);
                }
                let expect = if i == k { 1.0 } else { 0.0 };
                worst = worst.max((acc - expect).abs());
            }
        }
        worst
    }

    /// M * V' in exact arithmetic; exact mode only.
    pub fn identity_product_exact(&self) -> Option<Vec<Rational>> {
        let l = self.dim;
        let mus = &self.schedule.intensities_exact()[1..];
        match &self.entries {
            Entries::Float(_) => None,
            Entries::Exact(v) => {
                let mut out = vec![Rational::zero(); l * l];
                for i in 0..l {
                    for k in 0..l {
                        let mut acc = Rational::zero();
                        for j in 0..l {
                            let power = num_traits::pow::pow(mus[j].clone(), k);
                            acc += &v[i * l + j] * power;
                        }
                        out[i * l + k] = acc;
                    }
                }
                Some(out)
            }
        }
    }
}

/// Computes the inverse Vandermonde matrix for a schedule's non-zero probes.
pub fn inverse_vandermonde(
    schedule: &IntensitySchedule,
    mode: ArithmeticMode,
) -> Result<VandermondeInverse> {
    let l = schedule.probe_count();
    match mode {
        ArithmeticMode::Exact => {
            let mus = &schedule.intensities_exact()[1..];
            let entries = kernel_exact(mus);
            Ok(VandermondeInverse {
                schedule: schedule.clone(),
                dim: l,
                entries: Entries::Exact(entries),
            })
        }
        ArithmeticMode::Float => {
            let mus = &schedule.intensities_f64()[1..];
            let entries = kernel_f64(mus);
            if entries.iter().any(|e| !e.is_finite()) {
                return Err(DecoyError::OverflowInFloatMode);
            }
            Ok(VandermondeInverse {
                schedule: schedule.clone(),
                dim: l,
                entries: Entries::Float(entries),
            })
        }
    }
}

/// Elementary symmetric polynomials e_0..=e_n of the given values.
fn elementary_symmetric_exact(values: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); values.len() + 1];
    e[0] = Rational::from_integer(1.into());
    for (count, v) in values.iter().enumerate() {
        for m in (1..=count + 1).rev() {
            let bump = &e[m - 1] * v;
            e[m] += bump;
        }
    }
    e
}

fn elementary_symmetric_f64(values: &[f64]) -> Vec<f64> {
    let mut e = vec![0.0; values.len() + 1];
    e[0] = 1.0;
    for (count, &v) in values.iter().enumerate() {
        for m in (1..=count + 1).rev() {
            e[m] += e[m - 1] * v;
        }
    }
    e
}

fn kernel_exact(mus: &[Rational]) -> Vec<Rational> {
    let l = mus.len();
    let mut entries = vec![Rational::zero(); l * l];
    for j in 0..l {
        let others: Vec<Rational> =
            mus.iter().enumerate().filter(|&(n, _)| n != j).map(|(_, m)| m.clone()).collect();
        let sym = elementary_symmetric_exact(&others);
        let mut denom = Rational::from_integer(1.into());
        for (n, mu_n) in mus.iter().enumerate() {
            if n != j {
                denom *= mu_n - &mus[j];
            }
        }
        for i in 1..=l {
            let mut value = &sym[l - i] / &denom;
            if i % 2 == 0 {
                value = -value;
            }
            entries[(i - 1) * l + j] = value;
        }
    }
    entries
}

fn kernel_f64(mus: &[f64]) -> Vec<f64> {
    let l = mus.len();
    let mut entries = vec![0.0; l * l];
    for j in 0..l {
        let others: Vec<f64> =
            mus.iter().enumerate().filter(|&(n, _)| n != j).map(|(_, &m)| m).collect();
        let sym = elementary_symmetric_f64(&others);
        let mut denom = 1.0;
        for (n, &mu_n) in mus.iter().enumerate() {
            if n != j {
                denom *= mu_n - mus[j];
            }
        }
        for i in 1..=l {
            let sign = if i % 2 == 0 { -1.0 } else { 1.0 };
            entries[(i - 1) * l + j] = sign * sym[l - i] / denom;
        }
    }
    entries
}

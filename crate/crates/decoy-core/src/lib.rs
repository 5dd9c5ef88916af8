//! Decoy-style estimation of single-photon yields from coherent-probe gains.
//!
//! A detector probed with phase-randomized coherent pulses at intensities
//! {0, mu_1, ..., mu_L} produces gains that are Poisson mixtures of the
//! per-photon-number yields. This crate computes the coefficients that
//! unmix them, the resulting single-photon (and multi-mode coincidence)
//! yield estimates, and rigorous one-sided intervals for the truth, in
//! both f64 and exact-rational arithmetic.
//!
//! All operations are pure functions of their inputs and safe to call
//! concurrently.

pub mod coefficients;
pub mod delta;
pub mod error;
pub mod estimate;
pub mod gains;
pub mod rational;
pub mod schedule;
pub mod vandermonde;

pub use coefficients::{lambda_coefficients, lambda_equal_spacing, ArithmeticMode, DecoyCoefficients};
pub use delta::{
    closed_form_delta, interval_delta, interval_delta_auto, interval_delta_exact,
    interval_delta_float_certified, multimode_delta, multimode_delta_auto, multimode_delta_exact,
    ClosedFormKind, FLOAT_CERTIFY_RELATIVE,
};
pub use error::{DecoyError, Result};
pub use estimate::{
    estimate_y1, estimate_y1_exact, multimode_estimate, multimode_estimate_with_cap,
    EstimateReport, DEFAULT_TENSOR_CAP,
};
pub use gains::{GainEntry, GainRecord, Provenance};
pub use rational::{decimal_string, parse_decimal, rational_from_f64, Certified, Rational};
pub use schedule::{IntensitySchedule, DUPLICATE_RELATIVE_TOLERANCE};
pub use vandermonde::{inverse_vandermonde, VandermondeInverse};

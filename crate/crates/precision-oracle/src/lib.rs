//! Independent exact-rational reference for the decoy estimators.
//!
//! Everything here reaches the interval width through the remainder series
//! of the first inverse-Vandermonde row, a different algebraic route than
//! the weighted-exponential form the main implementation uses, so the two
//! certify each other. Also hosts the randomized containment campaigns and
//! the golden-value tables consumed by the test suites.

pub mod campaign;
pub mod error;
pub mod golden;
pub mod remainder;

pub use campaign::{containment_campaign, exact_gains, CampaignReport};
pub use error::{OracleError, Result};
pub use golden::{golden_delta_table, parse_golden_table, GOLDEN_DIGITS, GOLDEN_VERSION};
pub use remainder::{oracle_delta, oracle_delta_to_digits, remainder_expansion, RemainderExpansion};

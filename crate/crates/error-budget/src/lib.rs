//! Finite-statistics error budgets for decoy-style yield estimation:
//! statistical error of the sampled gains, its amplification through the
//! coefficients, total-error assembly, probe-count optimization, and the
//! least-squares fits that summarize the empirical curves.

pub mod budget;
pub mod error;
pub mod fit;
pub mod optimize;

pub use budget::{
    f_factor, statistical_error_per_gain, total_error, DeltaModel, ErrorBudget, ModelDescriptor,
    NoiseModel, FITTED_DELTA, FITTED_NOISE,
};
pub use error::{BudgetError, Result};
pub use fit::{linear_fit, power_fit, LinearFit, PowerFit};
pub use optimize::{optimize_probe_count, DEFAULT_PROBE_CAP};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BudgetError {
    #[error("budget {budget} below the {required} settings that must each receive a sample")]
    BudgetTooSmall { budget: f64, required: f64 },

    #[error("no feasible probe count for the given budget")]
    NoFeasibleL,

    #[error("fit needs at least two points with distinct abscissae")]
    DegenerateFit,

    #[error("{0}")]
    DomainError(String),

    #[error(transparent)]
    Core(#[from] decoy_core::DecoyError),
}

pub type Result<T> = std::result::Result<T, BudgetError>;

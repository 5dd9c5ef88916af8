use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("truncation order {truncation} does not exceed the probe count {probe_count}")]
    TruncationTooSmall { truncation: usize, probe_count: usize },

    #[error("tail not certifiable: need K + 1 >= 2 * mu_L (K = {truncation})")]
    TailNotCertifiable { truncation: usize },

    #[error(transparent)]
    Core(#[from] decoy_core::DecoyError),
}

pub type Result<T> = std::result::Result<T, OracleError>;

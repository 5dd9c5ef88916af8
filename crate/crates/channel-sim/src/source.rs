//! Photon-number distributions of the probe sources.

use crate::error::{ChannelError, Result};

/// Probability of the source emitting k photons per pulse.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceDistribution {
    /// Phase-randomized coherent pulse: Poisson photon statistics with the
    /// given mean photon number.
    Poisson { mean: f64 },
    /// Ideal number state emitting exactly this many photons.
    Fock { photons: usize },
    /// Explicit finite distribution p_0 ..= p_K.
    Table { probabilities: Vec<f64> },
}

impl SourceDistribution {
    pub fn validate(&self) -> Result<()> {
        match self {
            SourceDistribution::Poisson { mean } => {
                if !mean.is_finite() || *mean < 0.0 {
                    return Err(ChannelError::InvalidSource(format!(
                        "Poisson mean must be a non-negative finite number, got {mean}"
                    )));
                }
            }
            SourceDistribution::Fock { .. } => {}
            SourceDistribution::Table { probabilities } => {
                if probabilities.is_empty() {
                    return Err(ChannelError::InvalidSource("empty probability table".into()));
                }
                if probabilities.iter().any(|p| !p.is_finite() || *p < 0.0) {
                    return Err(ChannelError::InvalidSource(
                        "table probabilities must be non-negative".into(),
                    ));
                }
                let total: f64 = probabilities.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(ChannelError::InvalidSource(format!(
                        "table probabilities sum to {total}, expected 1"
                    )));
                }
            }
        }
        Ok(())
    }
}

//! Photon-number-dependent detection probabilities: the ground truth every
//! simulated experiment is checked against.

use crate::error::{ChannelError, Result};

/// Maps photon numbers (one per input mode) to a click probability in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub enum YieldModel {
    /// Threshold detector behind a lossy channel:
    /// Y_k = 1 - (1 - dark_count)(1 - transmittance)^k.
    LossDark { transmittance: f64, dark_count: f64 },
    /// Explicit yields Y_0 ..= Y_K with a constant value beyond the table.
    Table { yields: Vec<f64>, tail: f64 },
    /// Independent per-mode detectors; the coincidence yield is the product
    /// of the single-mode yields.
    SeparableProduct { modes: Vec<YieldModel> },
    /// Dense n-mode yield table in row-major order (last mode fastest),
    /// with an optional constant yield outside the table.
    CustomTensor { shape: Vec<usize>, values: Vec<f64>, tail: Option<f64> },
}

impl YieldModel {
    /// Lossless unit-efficiency detector: clicks iff at least one photon.
    pub fn ideal() -> Self {
        YieldModel::LossDark { transmittance: 1.0, dark_count: 0.0 }
    }

    /// Ideal n-fold coincidence: clicks iff every mode has a photon.
    pub fn ideal_coincidence(mode_count: usize) -> Self {
        YieldModel::SeparableProduct { modes: vec![YieldModel::ideal(); mode_count] }
    }

    /// Number of input modes the model covers.
    pub fn mode_count(&self) -> usize {
        match self {
            YieldModel::LossDark { .. } | YieldModel::Table { .. } => 1,
            YieldModel::SeparableProduct { modes } => modes.len(),
            YieldModel::CustomTensor { shape, .. } => shape.len(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |x: f64, what: &str| -> Result<()> {
            if !x.is_finite() || !(0.0..=1.0).contains(&x) {
                return Err(ChannelError::InvalidModel(format!("{what} {x} outside [0, 1]")));
            }
            Ok(())
        };
        match self {
            YieldModel::LossDark { transmittance, dark_count } => {
                unit(*transmittance, "transmittance")?;
                unit(*dark_count, "dark count probability")?;
            }
            YieldModel::Table { yields, tail } => {
                if yields.is_empty() {
                    return Err(ChannelError::InvalidModel("empty yield table".into()));
                }
                for &y in yields {
                    unit(y, "yield")?;
                }
                unit(*tail, "tail yield")?;
            }
            YieldModel::SeparableProduct { modes } => {
                if modes.is_empty() {
                    return Err(ChannelError::InvalidModel("no per-mode models".into()));
                }
                for mode in modes {
                    mode.validate()?;
                    if mode.mode_count() != 1 {
                        return Err(ChannelError::InvalidModel(
                            "separable factors must be single-mode".into(),
                        ));
                    }
                }
            }
            YieldModel::CustomTensor { shape, values, tail } => {
                if shape.is_empty() || shape.contains(&0) {
                    return Err(ChannelError::InvalidModel("degenerate tensor shape".into()));
                }
                let expect: usize = shape.iter().product();
                if values.len() != expect {
                    return Err(ChannelError::InvalidModel(format!(
                        "tensor holds {} values for shape {:?}",
                        values.len(),
                        shape
                    )));
                }
                for &y in values {
                    unit(y, "tensor yield")?;
                }
                if let Some(t) = tail {
                    unit(*t, "tensor tail yield")?;
                }
            }
        }
        Ok(())
    }
}

/// Evaluates a yield model at a photon-number tuple.
///
/// Total on valid models; panics on a mode-count mismatch or when a
/// tail-less tensor is queried outside its table (both are programming
/// errors, not data).
pub fn yield_at(model: &YieldModel, photons: &[usize]) -> f64 {
    match model {
        YieldModel::LossDark { transmittance, dark_count } => {
            assert_eq!(photons.len(), 1, "single-mode model");
            let survive_all = (1.0 - transmittance).powi(photons[0] as i32);
            1.0 - (1.0 - dark_count) * survive_all
        }
        YieldModel::Table { yields, tail } => {
            assert_eq!(photons.len(), 1, "single-mode model");
            yields.get(photons[0]).copied().unwrap_or(*tail)
        }
        YieldModel::SeparableProduct { modes } => {
            assert_eq!(photons.len(), modes.len(), "mode count mismatch");
            modes
                .iter()
                .zip(photons)
                .map(|(mode, &k)| yield_at(mode, &[k]))
                .product()
        }
        YieldModel::CustomTensor { shape, values, tail } => {
            assert_eq!(photons.len(), shape.len(), "mode count mismatch");
            let mut flat = 0usize;
            for (&k, &extent) in photons.iter().zip(shape) {
                if k >= extent {
                    return tail.expect("tensor queried outside its table without a tail rule");
                }
                flat = flat * extent + k;
            }
            values[flat]
        }
    }
}

//! The experiment configuration document: one JSON object per run, every
//! default explicit, unknown fields rejected.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use channel_sim::{ProbeSources, SourceDistribution, YieldModel};
use decoy_core::IntensitySchedule;
use error_budget::{DeltaModel, NoiseModel, FITTED_DELTA, FITTED_NOISE};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub schedule: ScheduleSpec,
    /// Number of input modes n.
    pub modes: usize,
    pub arithmetic: Arithmetic,
    /// Significant digits for exact-mode decimal output.
    pub digits: usize,
    pub seed: u64,
    pub yield_model: YieldModelSpec,
    pub sources: SourcesSpec,
    pub pulses: PulsesSpec,
    /// Pre-measured gains; when present, estimation skips simulation.
    pub gains_file: Option<PathBuf>,
    /// Total pulse budget M for optimization.
    pub budget: f64,
    /// Largest probe count the optimizer scans.
    pub probe_cap: usize,
    pub delta_model: ModelSpec,
    pub noise_model: ModelSpec,
    pub sweep: SweepSpec,
    /// Mode counts for the multi-mode sweeps.
    pub mode_sweep: Vec<usize>,
    /// Cap on the dense gain tensor (L+1)^n.
    pub tensor_cap: usize,
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            schedule: ScheduleSpec::EqualSpacing(2),
            modes: 1,
            arithmetic: Arithmetic::Float,
            digits: 12,
            seed: 0,
            yield_model: YieldModelSpec::LossDark { transmittance: 0.5, dark_count: 1e-5 },
            sources: SourcesSpec::Coherent,
            pulses: PulsesSpec::Exact,
            gains_file: None,
            budget: 1e8,
            probe_cap: 40,
            delta_model: ModelSpec::Fitted,
            noise_model: ModelSpec::Fitted,
            sweep: SweepSpec::default(),
            mode_sweep: vec![1, 2, 3, 4],
            tensor_cap: decoy_core::DEFAULT_TENSOR_CAP,
            output: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScheduleSpec {
    /// mu_j = j/L for the given L.
    EqualSpacing(usize),
    /// Explicit intensities; the vacuum is prepended if absent.
    Intensities(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arithmetic {
    Float,
    Exact,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum YieldModelSpec {
    LossDark { transmittance: f64, dark_count: f64 },
    Table { yields: Vec<f64>, tail: f64 },
    Separable { modes: Vec<YieldModelSpec> },
    Tensor { shape: Vec<usize>, values: Vec<f64>, tail: Option<f64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SourcesSpec {
    Coherent,
    PerIntensity { sources: Vec<SourceSpec> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SourceSpec {
    Poisson { mean: f64 },
    Fock { photons: usize },
    Table { probabilities: Vec<f64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PulsesSpec {
    /// Asymptotic gains, no sampling.
    Exact,
    /// Pulses per setting.
    PerSetting(u64),
    /// Total budget split evenly over the settings; the remainder is dropped.
    TotalBudget(u64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelSpec {
    /// Fitted exponentials with the built-in equal-spacing constants.
    Fitted,
    /// Fitted exponential with explicit constants.
    CustomFit { slope: f64, intercept: f64 },
    /// Exact values from the equal-spacing schedule at each L.
    Exact,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSpec {
    pub budget_min: f64,
    pub budget_max: f64,
    pub points: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec { budget_min: 1e3, budget_max: 1e12, points: 40 }
    }
}

impl ExperimentConfig {
    /// Loads a config file and overlays the command-line flags.
    pub fn load(
        path: Option<&std::path::Path>,
        output: Option<PathBuf>,
        seed: Option<u64>,
        exact: bool,
        digits: Option<usize>,
    ) -> Result<Self, CliError> {
        let mut config = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::Config(format!("cannot read config {}: {e}", p.display()))
                })?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Config(format!("config schema: {e}")))?
            }
            None => ExperimentConfig::default(),
        };
        if let Some(out) = output {
            config.output = Some(out);
        }
        if let Some(seed) = seed {
            config.seed = seed;
        }
        if exact {
            config.arithmetic = Arithmetic::Exact;
        }
        if let Some(digits) = digits {
            config.digits = digits;
        }
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.modes == 0 {
            return Err(CliError::Config("modes must be at least 1".into()));
        }
        if self.digits == 0 || self.digits > 1000 {
            return Err(CliError::Config("digits must be in 1..=1000".into()));
        }
        if self.mode_sweep.is_empty() || self.mode_sweep.contains(&0) {
            return Err(CliError::Config("mode_sweep entries must be positive".into()));
        }
        if let ScheduleSpec::EqualSpacing(0) = self.schedule {
            return Err(CliError::Config("equal_spacing needs at least one probe".into()));
        }
        Ok(())
    }

    pub fn schedule(&self) -> Result<IntensitySchedule, CliError> {
        match &self.schedule {
            ScheduleSpec::EqualSpacing(l) => {
                IntensitySchedule::equal_spacing(*l).map_err(CliError::config_from)
            }
            ScheduleSpec::Intensities(raw) => {
                IntensitySchedule::validate(raw).map_err(CliError::config_from)
            }
        }
    }

    pub fn yield_model(&self) -> Result<YieldModel, CliError> {
        let model = build_yield_model(&self.yield_model);
        model.validate().map_err(CliError::config_from)?;
        Ok(model)
    }

    pub fn probe_sources(&self) -> ProbeSources {
        match &self.sources {
            SourcesSpec::Coherent => ProbeSources::Coherent,
            SourcesSpec::PerIntensity { sources } => ProbeSources::PerIntensity(
                sources.iter().map(build_source).collect(),
            ),
        }
    }

    pub fn delta_model(&self) -> DeltaModel {
        match &self.delta_model {
            ModelSpec::Fitted => {
                DeltaModel::Fitted { slope: FITTED_DELTA.0, intercept: FITTED_DELTA.1 }
            }
            ModelSpec::CustomFit { slope, intercept } => {
                DeltaModel::Fitted { slope: *slope, intercept: *intercept }
            }
            ModelSpec::Exact => DeltaModel::ExactEqualSpacing,
        }
    }

    pub fn noise_model(&self) -> NoiseModel {
        match &self.noise_model {
            ModelSpec::Fitted => {
                NoiseModel::Fitted { slope: FITTED_NOISE.0, intercept: FITTED_NOISE.1 }
            }
            ModelSpec::CustomFit { slope, intercept } => {
                NoiseModel::Fitted { slope: *slope, intercept: *intercept }
            }
            ModelSpec::Exact => NoiseModel::ExactEqualSpacing,
        }
    }
}

fn build_yield_model(spec: &YieldModelSpec) -> YieldModel {
    match spec {
        YieldModelSpec::LossDark { transmittance, dark_count } => YieldModel::LossDark {
            transmittance: *transmittance,
            dark_count: *dark_count,
        },
        YieldModelSpec::Table { yields, tail } => {
            YieldModel::Table { yields: yields.clone(), tail: *tail }
        }
        YieldModelSpec::Separable { modes } => {
            YieldModel::SeparableProduct { modes: modes.iter().map(build_yield_model).collect() }
        }
        YieldModelSpec::Tensor { shape, values, tail } => YieldModel::CustomTensor {
            shape: shape.clone(),
            values: values.clone(),
            tail: *tail,
        },
    }
}

fn build_source(spec: &SourceSpec) -> SourceDistribution {
    match spec {
        SourceSpec::Poisson { mean } => SourceDistribution::Poisson { mean: *mean },
        SourceSpec::Fock { photons } => SourceDistribution::Fock { photons: *photons },
        SourceSpec::Table { probabilities } => {
            SourceDistribution::Table { probabilities: probabilities.clone() }
        }
    }
}

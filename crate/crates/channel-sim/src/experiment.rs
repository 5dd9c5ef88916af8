//! Full experiments: every probe-intensity tuple measured with the same
//! pulse budget, producing a complete gain record.

use decoy_core::{GainEntry, GainRecord, IntensitySchedule};

use crate::error::{ChannelError, Result};
use crate::gain::joint_gain_exact;
use crate::rng::{binomial_draw, setting_stream};
use crate::source::SourceDistribution;
use crate::yield_model::YieldModel;

/// Truncation tolerance used for the per-setting exact gains; keeps every
/// exact entry's certified bound below 1e-15.
const EXPERIMENT_REL_TOL: f64 = 1e-16;

/// Pulse budget per setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pulses {
    /// Asymptotic run: record the exact gains instead of sampling.
    Exact,
    /// Sample this many pulses at every setting.
    PerSetting(u64),
}

/// Which photon-number distribution sits behind each scheduled intensity.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbeSources {
    /// Coherent pulses at the scheduled intensities (the standard probe).
    Coherent,
    /// Explicit per-intensity overrides, parallel to the schedule.
    PerIntensity(Vec<SourceDistribution>),
}

/// Splits a total pulse budget evenly over the settings; the remainder is
/// returned rather than silently spent.
pub fn allocate_budget(total_pulses: u64, setting_count: usize) -> (u64, u64) {
    let settings = setting_count as u64;
    (total_pulses / settings, total_pulses % settings)
}

/// Runs a complete experiment over the (L+1)^n probe grid.
///
/// Every setting draws from its own generator stream (stream id = flat
/// setting index), so the record is identical however the settings are
/// evaluated.
pub fn run_experiment(
    schedule: &IntensitySchedule,
    mode_count: usize,
    sources: &ProbeSources,
    model: &YieldModel,
    pulses: Pulses,
    seed: u64,
) -> Result<GainRecord> {
    if mode_count == 0 {
        return Err(ChannelError::ArityMismatch { model: model.mode_count(), request: 0 });
    }
    if let Pulses::PerSetting(0) = pulses {
        return Err(ChannelError::InvalidPulseCount);
    }
    if let ProbeSources::PerIntensity(overrides) = sources {
        if overrides.len() != schedule.setting_count() {
            return Err(ChannelError::InvalidSource(format!(
                "{} source overrides for {} schedule settings",
                overrides.len(),
                schedule.setting_count()
            )));
        }
        for source in overrides {
            source.validate()?;
        }
    }
    model.validate()?;
    if model.mode_count() != mode_count {
        return Err(ChannelError::ArityMismatch {
            model: model.mode_count(),
            request: mode_count,
        });
    }

    let settings = schedule.setting_count();
    let grid: usize = settings.pow(mode_count as u32);
    let mut record = GainRecord::new(mode_count);
    let mut index = vec![0usize; mode_count];
    for flat in 0..grid {
        let mut rest = flat;
        for slot in (0..mode_count).rev() {
            index[slot] = rest % settings;
            rest /= settings;
        }
        let intensities: Vec<f64> = index.iter().map(|&j| schedule.intensity(j)).collect();
        let mode_sources: Vec<SourceDistribution> = index
            .iter()
            .map(|&j| match sources {
                ProbeSources::Coherent => {
                    SourceDistribution::Poisson { mean: schedule.intensity(j) }
                }
                ProbeSources::PerIntensity(overrides) => overrides[j].clone(),
            })
            .collect();
        let (q, q_bound) = joint_gain_exact(&mode_sources, model, EXPERIMENT_REL_TOL)?;
        let entry = match pulses {
            Pulses::Exact => {
                let scale = intensities.iter().sum::<f64>().exp();
                GainEntry::exact(intensities, q * scale, q_bound)
            }
            Pulses::PerSetting(m) => {
                let mut rng = setting_stream(seed, flat as u64);
                let clicks = binomial_draw(&mut rng, m, q.clamp(0.0, 1.0));
                GainEntry::sampled(intensities, clicks, m, seed)
            }
        };
        record.push(entry)?;
    }
    Ok(record)
}

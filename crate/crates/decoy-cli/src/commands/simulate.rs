//! `decoy simulate`: run the configured experiment and write the gains.

use channel_sim::{allocate_budget, run_experiment, Pulses};
use decoy_core::{GainRecord, IntensitySchedule};

use crate::config::{ExperimentConfig, PulsesSpec};
use crate::output::write_atomic;
use crate::{gainfile, CliError};

pub fn run(config: &ExperimentConfig) -> Result<(), CliError> {
    let schedule = config.schedule()?;
    let record = synthesize(config, &schedule)?;
    let text = gainfile::render_gain_file(&record);
    match config.output.as_deref() {
        Some(path) => write_atomic(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs the configured experiment (shared with `estimate`).
pub fn synthesize(
    config: &ExperimentConfig,
    schedule: &IntensitySchedule,
) -> Result<GainRecord, CliError> {
    let model = config.yield_model()?;
    let sources = config.probe_sources();
    let pulses = resolve_pulses(config, schedule)?;
    run_experiment(schedule, config.modes, &sources, &model, pulses, config.seed)
        .map_err(|e| match e {
            channel_sim::ChannelError::Core(core) => CliError::from_core(core),
            other => CliError::Config(other.to_string()),
        })
}

fn resolve_pulses(
    config: &ExperimentConfig,
    schedule: &IntensitySchedule,
) -> Result<Pulses, CliError> {
    match config.pulses {
        PulsesSpec::Exact => Ok(Pulses::Exact),
        PulsesSpec::PerSetting(m) => {
            if m == 0 {
                return Err(CliError::Config("per_setting pulses must be positive".into()));
            }
            Ok(Pulses::PerSetting(m))
        }
        PulsesSpec::TotalBudget(total) => {
            let settings = schedule
                .setting_count()
                .checked_pow(config.modes as u32)
                .ok_or_else(|| CliError::Infeasible("setting grid overflows".into()))?;
            let (per_setting, _remainder) = allocate_budget(total, settings);
            if per_setting == 0 {
                return Err(CliError::Infeasible(format!(
                    "budget {total} cannot cover {settings} settings"
                )));
            }
            Ok(Pulses::PerSetting(per_setting))
        }
    }
}

//! Observed or exact gain values A = Q * e^(sum of intensities), keyed by
//! the probe intensity tuple that produced them.

use crate::error::{DecoyError, Result};
use crate::schedule::IntensitySchedule;

/// Where a gain value came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    /// Analytic value with a certified truncation bound on Q.
    Exact { truncation_bound: f64 },
    /// Monte Carlo estimate clicks/pulses rescaled by e^(sum mu).
    Sampled { clicks: u64, pulses: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GainEntry {
    intensities: Vec<f64>,
    a_value: f64,
    provenance: Provenance,
}

impl GainEntry {
    pub fn exact(intensities: Vec<f64>, a_value: f64, truncation_bound: f64) -> Self {
        GainEntry { intensities, a_value, provenance: Provenance::Exact { truncation_bound } }
    }

    /// Builds a sampled entry; the A value is derived from the counts so the
    /// invariant a = (clicks/pulses) * e^(sum mu) holds by construction.
    pub fn sampled(intensities: Vec<f64>, clicks: u64, pulses: u64, seed: u64) -> Self {
        let total: f64 = intensities.iter().sum();
        let a_value = (clicks as f64 / pulses as f64) * total.exp();
        GainEntry { intensities, a_value, provenance: Provenance::Sampled { clicks, pulses, seed } }
    }

    /// A pre-computed entry, e.g. parsed from a gain file.
    pub fn raw(intensities: Vec<f64>, a_value: f64, provenance: Provenance) -> Self {
        GainEntry { intensities, a_value, provenance }
    }

    pub fn intensities(&self) -> &[f64] {
        &self.intensities
    }

    pub fn a_value(&self) -> f64 {
        self.a_value
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }
}

/// A complete set of gains over the probe grid of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct GainRecord {
    mode_count: usize,
    entries: Vec<GainEntry>,
}

impl GainRecord {
    pub fn new(mode_count: usize) -> Self {
        assert!(mode_count >= 1);
        GainRecord { mode_count, entries: Vec::new() }
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn entries(&self) -> &[GainEntry] {
        &self.entries
    }

    pub fn push(&mut self, entry: GainEntry) -> Result<()> {
        if entry.intensities.len() != self.mode_count {
            return Err(DecoyError::ScheduleMismatch(format!(
                "entry has {} intensities, record is {}-mode",
                entry.intensities.len(),
                self.mode_count
            )));
        }
        if !entry.a_value.is_finite() {
            return Err(DecoyError::ScheduleMismatch("non-finite gain value".into()));
        }
        self.entries.push(entry);
        Ok(())
    }

    /// Resolves the entries against a schedule into a dense tensor of
    /// (L+1)^n A values in mixed-radix order (last mode fastest).
    ///
    /// Fails with `ScheduleMismatch` for intensities that are not on the
    /// schedule or duplicated entries, `IncompleteTensor` listing every
    /// missing tuple, and `NegativeGain` for negative A values.
    pub fn dense_tensor(&self, schedule: &IntensitySchedule) -> Result<Vec<f64>> {
        let settings = schedule.setting_count();
        let size = settings
            .checked_pow(self.mode_count as u32)
            .ok_or(DecoyError::ModeCountOverflow { entries: usize::MAX, cap: usize::MAX })?;
        let mut tensor: Vec<Option<f64>> = vec![None; size];
        for entry in &self.entries {
            let mut flat = 0usize;
            for &raw in &entry.intensities {
                let index = schedule.resolve(raw).ok_or_else(|| {
                    DecoyError::ScheduleMismatch(format!(
                        "gain intensity {raw} is not on the schedule"
                    ))
                })?;
                flat = flat * settings + index;
            }
            if entry.a_value < 0.0 {
                return Err(DecoyError::NegativeGain(entry.a_value));
            }
            if tensor[flat].is_some() {
                return Err(DecoyError::ScheduleMismatch(format!(
                    "duplicate gain entry for {:?}",
                    entry.intensities
                )));
            }
            tensor[flat] = Some(entry.a_value);
        }
        let missing: Vec<Vec<f64>> = tensor
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_none())
            .map(|(flat, _)| unflatten(flat, settings, self.mode_count, schedule))
            .collect();
        if !missing.is_empty() {
            return Err(DecoyError::IncompleteTensor { missing });
        }
        Ok(tensor.into_iter().map(|v| v.unwrap()).collect())
    }
}

fn unflatten(
    mut flat: usize,
    settings: usize,
    modes: usize,
    schedule: &IntensitySchedule,
) -> Vec<f64> {
    let mut tuple = vec![0.0; modes];
    for slot in (0..modes).rev() {
        tuple[slot] = schedule.intensity(flat % settings);
        flat /= settings;
    }
    tuple
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_tensor_orders_by_schedule() {
        let schedule = IntensitySchedule::validate(&[0.5, 1.0]).unwrap();
        let mut record = GainRecord::new(1);
        record.push(GainEntry::exact(vec![1.0], 2.5, 0.0)).unwrap();
        record.push(GainEntry::exact(vec![0.0], 0.25, 0.0)).unwrap();
        record.push(GainEntry::exact(vec![0.5], 1.0, 0.0)).unwrap();
        assert_eq!(record.dense_tensor(&schedule).unwrap(), vec![0.25, 1.0, 2.5]);
    }

    #[test]
    fn missing_entries_are_listed() {
        let schedule = IntensitySchedule::validate(&[0.5, 1.0]).unwrap();
        let mut record = GainRecord::new(1);
        record.push(GainEntry::exact(vec![0.5], 1.0, 0.0)).unwrap();
        match record.dense_tensor(&schedule).unwrap_err() {
            DecoyError::IncompleteTensor { missing } => {
                assert_eq!(missing, vec![vec![0.0], vec![1.0]]);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn off_schedule_intensity_is_a_mismatch() {
        let schedule = IntensitySchedule::validate(&[0.5]).unwrap();
        let mut record = GainRecord::new(1);
        record.push(GainEntry::exact(vec![0.75], 1.0, 0.0)).unwrap();
        assert!(matches!(
            record.dense_tensor(&schedule),
            Err(DecoyError::ScheduleMismatch(_))
        ));
    }

    #[test]
    fn sampled_entry_enforces_rescale_invariant() {
        let entry = GainEntry::sampled(vec![1.0, 0.5], 300, 1000, 42);
        let expect = 0.3 * (1.5_f64).exp();
        assert!((entry.a_value() - expect).abs() < 1e-15);
    }

    #[test]
    fn negative_gain_detected() {
        let schedule = IntensitySchedule::validate(&[0.5]).unwrap();
        let mut record = GainRecord::new(1);
        record.push(GainEntry::exact(vec![0.0], -0.1, 0.0)).unwrap();
        record.push(GainEntry::exact(vec![0.5], 0.2, 0.0)).unwrap();
        assert_eq!(record.dense_tensor(&schedule).unwrap_err(), DecoyError::NegativeGain(-0.1));
    }
}

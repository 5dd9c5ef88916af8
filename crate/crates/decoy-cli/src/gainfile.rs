//! The gain-record wire format: a JSON array of
//! `{intensities: [reals], clicks: int|null, pulses: int|null, a_value: real}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use decoy_core::{GainEntry, GainRecord, Provenance};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GainFileEntry {
    pub intensities: Vec<f64>,
    pub clicks: Option<u64>,
    pub pulses: Option<u64>,
    pub a_value: f64,
}

pub fn read_gain_file(path: &Path) -> Result<GainRecord, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read gains {}: {e}", path.display())))?;
    let entries: Vec<GainFileEntry> = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("gain file schema: {e}")))?;
    if entries.is_empty() {
        return Err(CliError::MissingData {
            message: "gain file holds no entries".into(),
            missing: Vec::new(),
        });
    }
    let mode_count = entries[0].intensities.len();
    if mode_count == 0 {
        return Err(CliError::Config("gain entries need at least one intensity".into()));
    }
    let mut record = GainRecord::new(mode_count);
    for entry in entries {
        let provenance = match (entry.clicks, entry.pulses) {
            (Some(clicks), Some(pulses)) if pulses > 0 => {
                let derived = (clicks as f64 / pulses as f64)
                    * entry.intensities.iter().sum::<f64>().exp();
                if (derived - entry.a_value).abs() > 1e-9 * derived.abs().max(1.0) {
                    return Err(CliError::Config(format!(
                        "entry {:?}: a_value {} inconsistent with clicks/pulses ({derived})",
                        entry.intensities, entry.a_value
                    )));
                }
                Provenance::Sampled { clicks, pulses, seed: 0 }
            }
            (None, None) => Provenance::Exact { truncation_bound: 0.0 },
            _ => {
                return Err(CliError::Config(
                    "clicks and pulses must be both present or both null".into(),
                ))
            }
        };
        record
            .push(GainEntry::raw(entry.intensities, entry.a_value, provenance))
            .map_err(CliError::config_from)?;
    }
    Ok(record)
}

pub fn render_gain_file(record: &GainRecord) -> String {
    let entries: Vec<GainFileEntry> = record
        .entries()
        .iter()
        .map(|entry| {
            let (clicks, pulses) = match entry.provenance() {
                Provenance::Sampled { clicks, pulses, .. } => (Some(*clicks), Some(*pulses)),
                Provenance::Exact { .. } => (None, None),
            };
            GainFileEntry {
                intensities: entry.intensities().to_vec(),
                clicks,
                pulses,
                a_value: entry.a_value(),
            }
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&entries).expect("gain entries serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round_trip() {
        let mut record = GainRecord::new(1);
        record.push(GainEntry::exact(vec![0.0], 0.1, 0.0)).unwrap();
        record.push(GainEntry::sampled(vec![1.0], 300, 1000, 7)).unwrap();
        let text = render_gain_file(&record);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gains.json");
        std::fs::write(&path, &text).unwrap();
        let back = read_gain_file(&path).unwrap();
        assert_eq!(back.mode_count(), 1);
        assert_eq!(back.entries().len(), 2);
        assert_eq!(back.entries()[1].a_value(), record.entries()[1].a_value());
    }

    #[test]
    fn inconsistent_counts_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gains.json");
        std::fs::write(
            &path,
            r#"[{"intensities": [1.0], "clicks": 10, "pulses": 100, "a_value": 99.0}]"#,
        )
        .unwrap();
        assert!(matches!(read_gain_file(&path), Err(CliError::Config(_))));
    }

    #[test]
    fn empty_file_is_missing_data() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("gains.json");
        std::fs::write(&path, "[]").unwrap();
        assert!(matches!(read_gain_file(&path), Err(CliError::MissingData { .. })));
    }
}

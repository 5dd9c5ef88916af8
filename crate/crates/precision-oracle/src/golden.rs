//! Versioned golden-value tables: interval widths as 30-significant-digit
//! decimal strings, generated by the oracle and frozen for the test suites.

use decoy_core::{decimal_string, parse_decimal, IntensitySchedule, Rational};

use crate::error::Result;
use crate::remainder::oracle_delta_to_digits;

pub const GOLDEN_VERSION: &str = "decoy-goldens v1";
pub const GOLDEN_DIGITS: usize = 30;

/// Renders the equal-spacing width table for L = 1..=max_probe_count.
pub fn golden_delta_table(max_probe_count: usize) -> Result<String> {
    let mut out = String::new();
    out.push_str(GOLDEN_VERSION);
    out.push('\n');
    out.push_str("# interval width Delta_L, equal spacing mu_j = j/L\n");
    out.push_str("# L\tdelta\n");
    for probes in 1..=max_probe_count {
        let schedule = IntensitySchedule::equal_spacing(probes)?;
        let certified = oracle_delta_to_digits(&schedule, (GOLDEN_DIGITS + 2) as u32)?;
        out.push_str(&format!(
            "{probes}\t{}\n",
            decimal_string(&certified.value, GOLDEN_DIGITS)
        ));
    }
    Ok(out)
}

/// Parses a golden table back into (L, width) pairs; `None` on version or
/// format mismatch.
pub fn parse_golden_table(text: &str) -> Option<Vec<(usize, Rational)>> {
    let mut lines = text.lines();
    if lines.next()? != GOLDEN_VERSION {
        return None;
    }
    let mut rows = Vec::new();
    for line in lines {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (l_text, value_text) = line.split_once('\t')?;
        rows.push((l_text.parse().ok()?, parse_decimal(value_text)?));
    }
    Some(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn table_round_trips() {
        let table = golden_delta_table(3).unwrap();
        let rows = parse_golden_table(&table).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].0, 1);
        // First row is e - 2 to 30 digits.
        let e_minus_two = decoy_core::rational::exp_certified(
            &Rational::from_integer(1.into()),
            &decoy_core::rational::pow10_inverse(40),
        )
        .value
            - Rational::from_integer(2.into());
        let gap = (&rows[0].1 - &e_minus_two).abs();
        assert!(gap < decoy_core::rational::pow10_inverse(29));
    }

    #[test]
    fn version_gates_parsing() {
        assert!(parse_golden_table("something else\n1\t0.5\n").is_none());
    }
}

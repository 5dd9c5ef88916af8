//! The oracle and the main implementation certify each other: the
//! weighted-exponential width must land inside the remainder-series
//! bracket, saturating yield patterns must reach the interval endpoint,
//! and the committed goldens must regenerate bit-identically.

use decoy_core::rational::{exp_certified, pow10_inverse};
use decoy_core::{
    estimate_y1_exact, interval_delta_exact, interval_delta_float_certified, DecoyError,
    IntensitySchedule, Rational,
};
use num_traits::{One, Signed, ToPrimitive, Zero};
use precision_oracle::{oracle_delta, oracle_delta_to_digits};
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

fn random_spread_schedule(rng: &mut ChaCha12Rng, probes: usize) -> IntensitySchedule {
    // Sorted draws in (0.05, 1], regenerated until gaps exceed 2% relative.
    loop {
        let mut raw: Vec<f64> = (0..probes)
            .map(|_| 0.05 + 0.95 * ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64))
            .collect();
        raw.sort_by(f64::total_cmp);
        let spread = raw
            .windows(2)
            .all(|pair| (pair[1] - pair[0]) > 0.02 * pair[1].abs());
        if spread {
            if let Ok(schedule) = IntensitySchedule::validate(&raw) {
                return schedule;
            }
        }
    }
}

/// Float widths sit inside the oracle bracket (widened by the float path's
/// own certified rounding bound) for every schedule with L <= 8.
#[test]
fn float_widths_agree_with_the_oracle_through_l8() {
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    for probes in 1..=8usize {
        for _ in 0..12 {
            let schedule = random_spread_schedule(&mut rng, probes);
            let (float_width, float_bound) =
                interval_delta_float_certified(&schedule).unwrap();
            let bracket = oracle_delta_to_digits(&schedule, 20).unwrap();
            let lo = bracket.lower().to_f64().unwrap() - float_bound;
            let hi = bracket.upper().to_f64().unwrap() + float_bound;
            assert!(
                float_width >= lo && float_width <= hi,
                "L={probes}: {float_width} outside [{lo}, {hi}]"
            );
        }
    }
}

/// Beyond L = 8 the float path either still agrees or reports exhaustion.
#[test]
fn float_widths_beyond_l8_agree_or_exhaust() {
    for probes in 9..=12usize {
        let schedule = IntensitySchedule::equal_spacing(probes).unwrap();
        match decoy_core::interval_delta(&schedule, decoy_core::ArithmeticMode::Float) {
            Ok(width) => {
                let bracket = oracle_delta_to_digits(&schedule, 20).unwrap();
                let (_, float_bound) = interval_delta_float_certified(&schedule).unwrap();
                let lo = bracket.lower().to_f64().unwrap() - float_bound;
                let hi = bracket.upper().to_f64().unwrap() + float_bound;
                assert!(width >= lo && width <= hi, "L={probes}");
            }
            Err(DecoyError::PrecisionExhausted { .. }) => {}
            Err(other) => panic!("unexpected error {other:?}"),
        }
    }
}

/// Exact-mode widths land inside the oracle bracket with both error bars.
#[test]
fn exact_widths_agree_with_the_oracle() {
    for raw in [vec![1.0], vec![0.5, 1.0], vec![0.25, 0.5, 0.75, 1.0]] {
        let schedule = IntensitySchedule::validate(&raw).unwrap();
        let main = interval_delta_exact(&schedule).unwrap();
        let oracle = oracle_delta_to_digits(&schedule, 32).unwrap();
        let gap = (&main.value - &oracle.value).abs();
        assert!(
            gap <= &main.error_bound + &oracle.error_bound,
            "schedule {raw:?} disagrees beyond certified bounds"
        );
    }
}

/// The half/one schedule bracketed to better than 1e-25 at K = 60.
#[test]
fn two_probe_width_bracketed_to_25_digits() {
    let schedule = IntensitySchedule::validate(&[0.5, 1.0]).unwrap();
    let bracket = oracle_delta(&schedule, 60).unwrap();
    assert!(bracket.error_bound < pow10_inverse(25));
    let expect = 0.123_396_745_658_532_65_f64;
    assert!((bracket.value.to_f64().unwrap() - expect).abs() < 1e-15);
}

/// The exact-mode extension keeps shrinking beyond the float ceiling.
#[test]
fn widths_keep_shrinking_past_the_float_ceiling() {
    let eleven = oracle_delta_to_digits(&IntensitySchedule::equal_spacing(11).unwrap(), 25).unwrap();
    let twelve = oracle_delta_to_digits(&IntensitySchedule::equal_spacing(12).unwrap(), 25).unwrap();
    assert!(twelve.value > Rational::zero());
    assert!(twelve.upper() < eleven.lower());
}

/// The adversarial pattern Y_k = 1 for k > L (0 otherwise) drives the
/// estimate to the interval endpoint exactly: estimate - truth = +-Delta_L.
#[test]
fn saturating_yields_reach_the_endpoint() {
    for raw in [vec![1.0], vec![0.5, 1.0], vec![1.0 / 3.0, 2.0 / 3.0, 1.0]] {
        let schedule = IntensitySchedule::validate(&raw).unwrap();
        let probes = schedule.probe_count();
        let precision = pow10_inverse(40);

        // Gains of the saturating channel: A_mu = e^mu - sum_{k<=L} mu^k/k!.
        let gains: Vec<Rational> = schedule
            .intensities_exact()
            .iter()
            .map(|mu| {
                let e = exp_certified(mu, &precision);
                let mut low_orders = Rational::zero();
                let mut term = Rational::one();
                for k in 0..=probes {
                    if k > 0 {
                        term = &term * mu / Rational::from_integer((k as i64).into());
                    }
                    low_orders += &term;
                }
                e.value - low_orders
            })
            .collect();
        let estimate = estimate_y1_exact(&gains, &schedule).unwrap();

        // Truth is Y_1 = 0; the signed gap must equal the width.
        let width = oracle_delta_to_digits(&schedule, 30).unwrap();
        let signed = if probes % 2 == 1 { estimate } else { -estimate };
        let gap = (&signed - &width.value).abs();
        // Slack: exponential tails entered each gain; widen by them.
        let slack = width.error_bound + pow10_inverse(30);
        assert!(gap <= slack, "schedule {raw:?}: endpoint missed by {gap:?}");
    }
}

/// Committed goldens regenerate identically and match the main exact path.
#[test]
fn goldens_regenerate_and_cross_check() {
    let committed = include_str!("../goldens/delta_equal_spacing.v1.txt");
    let regenerated = precision_oracle::golden_delta_table(14).unwrap();
    assert_eq!(committed, regenerated, "golden table drifted");

    let rows = precision_oracle::parse_golden_table(committed).unwrap();
    assert_eq!(rows.len(), 14);
    for (probes, golden) in rows {
        let schedule = IntensitySchedule::equal_spacing(probes).unwrap();
        let main = interval_delta_exact(&schedule).unwrap();
        let gap = (&main.value - &golden).abs();
        // Golden strings carry 30 significant digits.
        let scale = golden * pow10_inverse(28);
        assert!(gap <= &main.error_bound + &scale, "L={probes}");
    }
}

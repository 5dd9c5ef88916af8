//! Statistical behavior of the simulated experiments: binomial scaling,
//! agreement with the asymptotic gains, and order-independent records.

use channel_sim::{
    binomial_draw, run_experiment, sample_clicks, setting_stream, ProbeSources, Pulses,
    SourceDistribution, YieldModel,
};
use channel_sim::{gain_exact, joint_gain_exact};
use decoy_core::{estimate_y1, GainEntry, GainRecord, IntensitySchedule};

/// stddev of clicks/m scales as m^(-1/2): compensated by sqrt(m) it must be
/// flat across three decades, within 10%.
#[test]
fn click_fraction_scaling() {
    let q: f64 = 0.3;
    let seeds = 400u64;
    let reference = (q * (1.0 - q)).sqrt();
    for m in [1_000u64, 10_000, 100_000, 1_000_000] {
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for seed in 0..seeds {
            let fraction = sample_clicks(q, m, seed) as f64 / m as f64;
            sum += fraction;
            sum_sq += fraction * fraction;
        }
        let n = seeds as f64;
        let mean = sum / n;
        let std = ((sum_sq - n * mean * mean) / (n - 1.0)).sqrt();
        let compensated = std * (m as f64).sqrt();
        assert!(
            (compensated / reference - 1.0).abs() < 0.10,
            "m={m}: compensated stddev {compensated} vs {reference}"
        );
    }
}

/// Sampled estimates cluster around the asymptotic estimate within the
/// statistical error model: 4 * (1/sqrt(m)) * f(L) covers at least 95% of
/// 500 seeds at m = 1e6.
#[test]
fn sampled_estimates_track_exact_gains() {
    let schedule = IntensitySchedule::validate(&[1.0]).unwrap();
    let model = YieldModel::LossDark { transmittance: 0.5, dark_count: 1e-5 };
    let pulses = 1_000_000u64;

    let exact_record = run_experiment(
        &schedule,
        1,
        &ProbeSources::Coherent,
        &model,
        Pulses::Exact,
        0,
    )
    .unwrap();
    let exact_estimate = estimate_y1(&exact_record, &schedule).unwrap().estimate;

    // f(1) for {0, 1} is sqrt(lambda_0^2 + lambda_1^2) = sqrt(2).
    let stat_error = (1.0 / (pulses as f64).sqrt()) * 2.0_f64.sqrt();
    let radius = 4.0 * stat_error;

    let seeds = 500u64;
    let mut inside = 0u32;
    for seed in 0..seeds {
        let record = run_experiment(
            &schedule,
            1,
            &ProbeSources::Coherent,
            &model,
            Pulses::PerSetting(pulses),
            seed,
        )
        .unwrap();
        let estimate = estimate_y1(&record, &schedule).unwrap().estimate;
        if (estimate - exact_estimate).abs() <= radius {
            inside += 1;
        }
    }
    assert!(inside as f64 >= 0.95 * seeds as f64, "only {inside}/{seeds} inside 4 sigma");
}

/// The record is assembled from per-setting streams, so building it in any
/// order gives the same entries as run_experiment's canonical order.
#[test]
fn record_is_independent_of_evaluation_order() {
    let schedule = IntensitySchedule::validate(&[0.25, 0.5, 1.0]).unwrap();
    let model = YieldModel::LossDark { transmittance: 0.7, dark_count: 1e-4 };
    let seed = 99u64;
    let pulses = 20_000u64;

    let canonical = run_experiment(
        &schedule,
        1,
        &ProbeSources::Coherent,
        &model,
        Pulses::PerSetting(pulses),
        seed,
    )
    .unwrap();

    // Rebuild every setting in reverse order straight from the primitives.
    let mut reversed = GainRecord::new(1);
    let mut entries = Vec::new();
    for flat in (0..schedule.setting_count()).rev() {
        let mu = schedule.intensity(flat);
        let (q, _) = gain_exact(
            &SourceDistribution::Poisson { mean: mu },
            &model,
            1e-12,
        )
        .unwrap();
        let clicks = binomial_draw(&mut setting_stream(seed, flat as u64), pulses, q);
        entries.push(GainEntry::sampled(vec![mu], clicks, pulses, seed));
    }
    entries.reverse();
    for entry in entries {
        reversed.push(entry).unwrap();
    }
    assert_eq!(canonical, reversed);
}

/// Exact gains stay in range: Q in [0,1] and A bounded by e^(sum mu).
#[test]
fn gain_bounds_hold() {
    let models = [
        YieldModel::LossDark { transmittance: 0.3, dark_count: 0.05 },
        YieldModel::Table { yields: vec![0.0, 1.0, 0.2], tail: 0.7 },
        YieldModel::ideal(),
    ];
    for model in &models {
        for mean in [0.0, 0.2, 0.9, 3.0] {
            let (q, err) =
                gain_exact(&SourceDistribution::Poisson { mean }, model, 1e-9).unwrap();
            assert!(q >= 0.0 && q <= 1.0 + err, "Q={q} out of range");
        }
    }
    // Two-mode: A <= e^(mu1 + mu2).
    let model = YieldModel::ideal_coincidence(2);
    let sources = [
        SourceDistribution::Poisson { mean: 0.8 },
        SourceDistribution::Poisson { mean: 0.4 },
    ];
    let (q, _) = joint_gain_exact(&sources, &model, 1e-9).unwrap();
    assert!(q <= 1.0);
}

/// Two-mode experiment against hand-computed coincidence gains.
#[test]
fn two_mode_exact_record_matches_closed_form() {
    let schedule = IntensitySchedule::validate(&[1.0]).unwrap();
    let record = run_experiment(
        &schedule,
        2,
        &ProbeSources::Coherent,
        &YieldModel::ideal_coincidence(2),
        Pulses::Exact,
        0,
    )
    .unwrap();
    let e = std::f64::consts::E;
    for entry in record.entries() {
        let nonzero = entry.intensities().iter().filter(|&&mu| mu > 0.0).count();
        let expect = match nonzero {
            2 => (e - 1.0) * (e - 1.0),
            _ => 0.0,
        };
        assert!(
            (entry.a_value() - expect).abs() < 1e-10,
            "tuple {:?}: {} vs {expect}",
            entry.intensities(),
            entry.a_value()
        );
    }
}

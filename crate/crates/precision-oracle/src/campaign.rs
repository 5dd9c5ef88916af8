//! Randomized containment campaigns: draw yield vectors, compute exact
//! gains, and verify the interval really brackets the truth.

use channel_sim::{setting_stream, uniform_unit};
use decoy_core::{estimate_y1_exact, IntensitySchedule, Rational};
use num_traits::{One, Zero};

use crate::error::Result;
use crate::remainder::oracle_delta;

/// Outcome of a containment campaign; violations are reported, not thrown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub trials: usize,
    pub violations: usize,
}

impl CampaignReport {
    pub fn clean(&self) -> bool {
        self.violations == 0
    }
}

/// Photon-number cutoff for the sampled yield vectors; zero beyond, which
/// keeps every gain a finite rational sum.
fn yield_cutoff(schedule: &IntensitySchedule) -> usize {
    (2 * schedule.probe_count() + 8).max(16)
}

/// Granularity of the sampled yields; a coarse exact grid keeps the
/// rational arithmetic small without biasing the campaign.
const YIELD_GRID: u64 = 1024;

/// Runs `trials` random yield vectors against the estimator. Yields are
/// drawn i.i.d. uniform on the exact grid {0, 1/1024, ..., 1023/1024},
/// one generator stream per trial, so campaigns are reproducible and
/// order-independent.
///
/// For each trial the exact estimate must sit on the parity side of the
/// truth, no further than the certified interval width.
pub fn containment_campaign(
    schedule: &IntensitySchedule,
    seed: u64,
    trials: usize,
) -> Result<CampaignReport> {
    let cutoff = yield_cutoff(schedule);
    let width = oracle_delta(schedule, cutoff.max(2 * schedule.probe_count() + 8))?;
    let width_upper = width.upper();
    let odd = schedule.probe_count() % 2 == 1;

    // mu^k / k! is trial-independent; compute the ladder once.
    let ladders: Vec<Vec<Rational>> = schedule
        .intensities_exact()
        .iter()
        .map(|mu| {
            let mut ladder = Vec::with_capacity(cutoff + 1);
            let mut term = Rational::one();
            ladder.push(term.clone());
            for k in 1..=cutoff {
                term = &term * mu / Rational::from_integer((k as i64).into());
                ladder.push(term.clone());
            }
            ladder
        })
        .collect();

    let mut violations = 0usize;
    for trial in 0..trials {
        let mut rng = setting_stream(seed, trial as u64);
        let yields: Vec<Rational> = (0..=cutoff)
            .map(|_| {
                let ticks = (uniform_unit(&mut rng) * YIELD_GRID as f64) as u64;
                Rational::new(ticks.into(), YIELD_GRID.into())
            })
            .collect();
        let gains: Vec<Rational> = ladders
            .iter()
            .map(|ladder| {
                ladder
                    .iter()
                    .zip(&yields)
                    .fold(Rational::zero(), |acc, (coeff, y)| acc + coeff * y)
            })
            .collect();
        let estimate = estimate_y1_exact(&gains, schedule).expect("complete gains");
        let truth = yields[1].clone();
        let contained = if odd {
            estimate >= truth && &estimate - &truth <= width_upper
        } else {
            estimate <= truth && &truth - &estimate <= width_upper
        };
        if !contained {
            violations += 1;
        }
    }
    Ok(CampaignReport { trials, violations })
}

/// Exact gains A_mu = sum_k mu^k / k! Y_k for a finite yield vector.
pub fn exact_gains(schedule: &IntensitySchedule, yields: &[Rational]) -> Vec<Rational> {
    schedule
        .intensities_exact()
        .iter()
        .map(|mu| {
            let mut term = Rational::one();
            let mut acc = Rational::zero();
            for (k, y) in yields.iter().enumerate() {
                if k > 0 {
                    term = &term * mu / Rational::from_integer((k as i64).into());
                }
                acc += &term * y;
            }
            acc
        })
        .collect()
}

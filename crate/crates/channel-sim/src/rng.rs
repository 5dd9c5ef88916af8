//! Deterministic, platform-independent sampling.
//!
//! The generator is counter-based (ChaCha12) with one independent stream
//! per experimental setting, so results do not depend on evaluation order.
//! Binomial draws use CDF inversion built from IEEE basic operations only:
//! no transcendental calls, hence bit-identical counts everywhere. Draws
//! with m*Q beyond 10 are decomposed into independent sub-binomials whose
//! per-chunk mean stays below 10, keeping every inversion loop short and
//! its starting probability far from underflow.

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

/// Largest per-chunk mean for a single inversion pass.
const INVERSION_MEAN_CAP: f64 = 10.0;

/// The stream used by a given experimental setting.
pub fn setting_stream(seed: u64, setting_index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(setting_index);
    rng
}

/// Uniform in [0, 1) with 53-bit resolution.
pub fn uniform_unit(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Integer power by squaring; keeps (1-q)^n free of libm.
fn pow_u64(base: f64, mut exponent: u64) -> f64 {
    let mut acc = 1.0;
    let mut b = base;
    while exponent > 0 {
        if exponent & 1 == 1 {
            acc *= b;
        }
        b *= b;
        exponent >>= 1;
    }
    acc
}

/// One CDF-inversion draw from Binomial(n, q); requires n*q small enough
/// that (1-q)^n stays well above underflow (the caller caps n*q at 10).
fn inversion_draw(rng: &mut impl RngCore, n: u64, q: f64) -> u64 {
    let mut u = uniform_unit(rng);
    let ratio = q / (1.0 - q);
    let mut pmf = pow_u64(1.0 - q, n);
    let mut k = 0u64;
    loop {
        if u < pmf || k >= n {
            return k;
        }
        u -= pmf;
        pmf *= (n - k) as f64 / (k + 1) as f64 * ratio;
        k += 1;
    }
}

/// Draws from Binomial(trials, p), fully determined by the generator state.
pub fn binomial_draw(rng: &mut impl RngCore, trials: u64, p: f64) -> u64 {
    debug_assert!((0.0..=1.0).contains(&p), "p={p}");
    if trials == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return trials;
    }
    // Sample the rarer outcome so chunk counts stay reasonable.
    let flip = p > 0.5;
    let q = if flip { 1.0 - p } else { p };
    let chunk = ((INVERSION_MEAN_CAP / q).floor() as u64).max(1);
    let mut remaining = trials;
    let mut total = 0u64;
    while remaining > 0 {
        let n = remaining.min(chunk);
        total += inversion_draw(rng, n, q);
        remaining -= n;
    }
    if flip {
        trials - total
    } else {
        total
    }
}

/// Click count for one setting: Binomial(pulses, gain) from the seed's
/// base stream. Same (gain, pulses, seed) always returns the same count.
pub fn sample_clicks(gain: f64, pulses: u64, seed: u64) -> u64 {
    binomial_draw(&mut setting_stream(seed, 0), pulses, gain)
}

//! Exact gain computation: Q = sum_k P(k) Y_k with certified truncation
//! bounds, and the rescaled form A = Q e^(sum of intensities).

use crate::error::{ChannelError, Result};
use crate::source::SourceDistribution;
use crate::yield_model::{yield_at, YieldModel};

/// Absolute floor for tail certification; lets dead channels (Q = 0)
/// terminate since a relative criterion can never bind there.
const ABSOLUTE_TAIL_FLOOR: f64 = 1e-18;

fn check_tolerance(rel_tol: f64) -> Result<()> {
    if !(rel_tol > 0.0 && rel_tol <= 1e-6) {
        return Err(ChannelError::InvalidTolerance(rel_tol));
    }
    Ok(())
}

/// Single-mode gain with a certified truncation bound on Q.
///
/// The Poisson series is cut at K only once the remaining source mass
/// (which bounds the missing contribution, yields being at most 1) drops
/// below `rel_tol * Q` or the absolute floor.
pub fn gain_exact(
    source: &SourceDistribution,
    model: &YieldModel,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    check_tolerance(rel_tol)?;
    source.validate()?;
    model.validate()?;
    if model.mode_count() != 1 {
        return Err(ChannelError::ArityMismatch { model: model.mode_count(), request: 1 });
    }
    Ok(single_mode_gain(source, model, rel_tol))
}

fn single_mode_gain(source: &SourceDistribution, model: &YieldModel, rel_tol: f64) -> (f64, f64) {
    match source {
        SourceDistribution::Fock { photons } => (yield_at(model, &[*photons]), 0.0),
        SourceDistribution::Table { probabilities } => {
            let q = probabilities
                .iter()
                .enumerate()
                .map(|(k, p)| p * yield_at(model, &[k]))
                .sum();
            (q, 0.0)
        }
        SourceDistribution::Poisson { mean } => poisson_gain(*mean, model, rel_tol),
    }
}

fn poisson_gain(mean: f64, model: &YieldModel, rel_tol: f64) -> (f64, f64) {
    let mut pmf = (-mean).exp();
    let mut q = pmf * yield_at(model, &[0]);
    let start = 30.0_f64.max((mean + 12.0 * mean.sqrt()).ceil()) as usize;
    let mut k = 0usize;
    loop {
        k += 1;
        pmf *= mean / k as f64;
        q += pmf * yield_at(model, &[k]);
        if k >= start {
            let tail = poisson_tail_bound(mean, pmf, k);
            if tail <= rel_tol * q || tail <= ABSOLUTE_TAIL_FLOOR {
                return (q, tail);
            }
        }
        assert!(k < 5_000_000, "Poisson series failed to converge");
    }
}

/// Bound on the source mass beyond k, given pmf(k): the term ratios are at
/// most mean/(k+2) < 1 once k + 2 > mean, so the tail is geometric.
fn poisson_tail_bound(mean: f64, pmf_k: f64, k: usize) -> f64 {
    let next = pmf_k * mean / (k + 1) as f64;
    let ratio = mean / (k + 2) as f64;
    if ratio >= 1.0 {
        return f64::INFINITY;
    }
    next / (1.0 - ratio)
}

/// Rescales a gain by e^(total intensity): A = Q e^mu.
pub fn a_from_q(gain: f64, total_intensity: f64) -> f64 {
    gain * total_intensity.exp()
}

/// Joint coincidence gain Q for per-mode sources under an n-mode model,
/// with a certified bound.
pub fn joint_gain_exact(
    sources: &[SourceDistribution],
    model: &YieldModel,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    check_tolerance(rel_tol)?;
    for source in sources {
        source.validate()?;
    }
    model.validate()?;
    if model.mode_count() != sources.len() {
        return Err(ChannelError::ArityMismatch {
            model: model.mode_count(),
            request: sources.len(),
        });
    }
    match model {
        YieldModel::SeparableProduct { modes } => {
            // Factorized series: Q = prod_i Q_i, with the error bound
            // prod (Q_i + e_i) - prod Q_i.
            let mut q = 1.0;
            let mut upper = 1.0;
            for (source, mode) in sources.iter().zip(modes) {
                let (qi, ei) = single_mode_gain(source, mode, rel_tol);
                q *= qi;
                upper *= qi + ei;
            }
            Ok((q, upper - q))
        }
        YieldModel::CustomTensor { shape, values, tail } => {
            let tail = tail.ok_or(ChannelError::TensorTailUnbounded)?;
            Ok(tensor_gain(sources, shape, values, tail))
        }
        single_mode => {
            debug_assert_eq!(sources.len(), 1);
            Ok(single_mode_gain(&sources[0], single_mode, rel_tol))
        }
    }
}

/// Tensor-with-constant-tail gain: the in-table box is summed exactly and
/// the remaining source mass, 1 - prod_i cdf_i, all carries the tail yield.
/// No truncation is involved, so the certified bound is zero.
fn tensor_gain(
    sources: &[SourceDistribution],
    shape: &[usize],
    values: &[f64],
    tail: f64,
) -> (f64, f64) {
    let pmfs: Vec<Vec<f64>> = sources
        .iter()
        .zip(shape)
        .map(|(source, &extent)| pmf_prefix(source, extent))
        .collect();
    let mut in_box = 0.0;
    let mut index = vec![0usize; shape.len()];
    for (flat, &y) in values.iter().enumerate() {
        let mut rest = flat;
        let mut weight = 1.0;
        for slot in (0..shape.len()).rev() {
            index[slot] = rest % shape[slot];
            rest /= shape[slot];
            weight *= pmfs[slot][index[slot]];
        }
        in_box += weight * y;
    }
    let mass_in_box: f64 = pmfs.iter().map(|p| p.iter().sum::<f64>()).product();
    (in_box + tail * (1.0 - mass_in_box).max(0.0), 0.0)
}

fn pmf_prefix(source: &SourceDistribution, extent: usize) -> Vec<f64> {
    match source {
        SourceDistribution::Poisson { mean } => {
            let mut out = Vec::with_capacity(extent);
            let mut pmf = (-mean).exp();
            for k in 0..extent {
                if k > 0 {
                    pmf *= mean / k as f64;
                }
                out.push(pmf);
            }
            out
        }
        SourceDistribution::Fock { photons } => {
            (0..extent).map(|k| if k == *photons { 1.0 } else { 0.0 }).collect()
        }
        SourceDistribution::Table { probabilities } => {
            (0..extent).map(|k| probabilities.get(k).copied().unwrap_or(0.0)).collect()
        }
    }
}

/// Coincidence gain A for coherent probes at the given intensities.
pub fn coincidence_gain_exact(
    intensities: &[f64],
    model: &YieldModel,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    let sources: Vec<SourceDistribution> =
        intensities.iter().map(|&mu| SourceDistribution::Poisson { mean: mu }).collect();
    let (q, err) = joint_gain_exact(&sources, model, rel_tol)?;
    let scale = intensities.iter().sum::<f64>().exp();
    Ok((q * scale, err * scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::E;

    const TOL: f64 = 1e-9;

    #[test]
    fn fock_source_reads_off_the_yield() {
        let model = YieldModel::LossDark { transmittance: 0.42, dark_count: 0.01 };
        let (q, err) = gain_exact(&SourceDistribution::Fock { photons: 1 }, &model, TOL).unwrap();
        assert_eq!(err, 0.0);
        assert_relative_eq!(q, yield_at(&model, &[1]), max_relative = 1e-15);
    }

    #[test]
    fn poisson_lossless_gain() {
        let (q, err) = gain_exact(
            &SourceDistribution::Poisson { mean: 1.0 },
            &YieldModel::ideal(),
            TOL,
        )
        .unwrap();
        assert_relative_eq!(q, 1.0 - (-1.0_f64).exp(), max_relative = 1e-12);
        assert!(err <= TOL * q + 1e-18);
    }

    #[test]
    fn unit_yields_normalize() {
        // Y_k = 1 for every k makes Q the total source mass.
        let all_click = YieldModel::LossDark { transmittance: 0.0, dark_count: 1.0 };
        for mean in [0.1, 1.0, 4.5] {
            let (q, _) =
                gain_exact(&SourceDistribution::Poisson { mean }, &all_click, TOL).unwrap();
            assert_relative_eq!(q, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn loss_dark_matches_generating_function() {
        // Q = 1 - (1 - dark) e^(-mean * transmittance), the closed form the
        // series must reproduce.
        for (mean, eta, dark) in [(0.5, 0.5, 1e-5), (1.3, 0.25, 0.02), (2.0, 1.0, 0.0)] {
            let model = YieldModel::LossDark { transmittance: eta, dark_count: dark };
            let (q, err) =
                gain_exact(&SourceDistribution::Poisson { mean }, &model, TOL).unwrap();
            let closed = 1.0 - (1.0 - dark) * (-mean * eta).exp();
            assert!((q - closed).abs() <= err + 1e-13, "mean={mean} eta={eta}");
        }
    }

    #[test]
    fn truncation_bound_is_monotone() {
        // Tightening the tolerance moves Q by less than the earlier bound.
        let model = YieldModel::Table { yields: vec![0.0, 0.3, 0.9], tail: 0.6 };
        let source = SourceDistribution::Poisson { mean: 2.0 };
        let (q_coarse, err_coarse) = gain_exact(&source, &model, 1e-6).unwrap();
        let (q_fine, _) = gain_exact(&source, &model, 1e-12).unwrap();
        assert!((q_fine - q_coarse).abs() <= err_coarse + 1e-18);
    }

    #[test]
    fn a_from_q_rescale() {
        assert_eq!(a_from_q(0.0, 3.0), 0.0);
        assert_relative_eq!(a_from_q(1.0 - 1.0 / E, 1.0), E - 1.0, max_relative = 1e-13);
        assert_eq!(a_from_q(0.5, 0.0), 0.5);
    }

    #[test]
    fn vacuum_coincidence_is_the_zero_yield() {
        let model = YieldModel::CustomTensor {
            shape: vec![2, 2],
            values: vec![0.125, 0.0, 0.0, 0.0],
            tail: Some(0.0),
        };
        let (a, _) = coincidence_gain_exact(&[0.0, 0.0], &model, TOL).unwrap();
        assert_relative_eq!(a, 0.125, max_relative = 1e-13);
    }

    #[test]
    fn ideal_two_mode_coincidence_gain() {
        let model = YieldModel::ideal_coincidence(2);
        let (a, _) = coincidence_gain_exact(&[1.0, 1.0], &model, TOL).unwrap();
        assert_relative_eq!(a, (E - 1.0) * (E - 1.0), max_relative = 1e-11);
    }

    #[test]
    fn separable_factorization_matches_direct_tensor() {
        // Product of two loss_dark detectors, once as a separable model and
        // once spelled out as a tensor with tail 1-ish handled by a large box.
        let eta = 0.6;
        let single = YieldModel::LossDark { transmittance: eta, dark_count: 0.0 };
        let separable = YieldModel::SeparableProduct { modes: vec![single; 2] };
        let boxed = 24usize;
        let mut values = Vec::with_capacity(boxed * boxed);
        for k1 in 0..boxed {
            for k2 in 0..boxed {
                let y1 = 1.0 - (1.0 - eta).powi(k1 as i32);
                let y2 = 1.0 - (1.0 - eta).powi(k2 as i32);
                values.push(y1 * y2);
            }
        }
        let tensor = YieldModel::CustomTensor {
            shape: vec![boxed, boxed],
            values,
            tail: Some(1.0),
        };
        let mus = [0.8, 0.5];
        let (a_sep, _) = coincidence_gain_exact(&mus, &separable, TOL).unwrap();
        let (a_tensor, _) = coincidence_gain_exact(&mus, &tensor, TOL).unwrap();
        assert_relative_eq!(a_sep, a_tensor, max_relative = 1e-12);
    }

    #[test]
    fn tensor_without_tail_is_rejected() {
        let model =
            YieldModel::CustomTensor { shape: vec![2], values: vec![0.0, 1.0], tail: None };
        assert_eq!(
            coincidence_gain_exact(&[0.5], &model, TOL).unwrap_err(),
            ChannelError::TensorTailUnbounded
        );
    }

    #[test]
    fn tolerance_domain() {
        let model = YieldModel::ideal();
        let src = SourceDistribution::Poisson { mean: 1.0 };
        assert!(gain_exact(&src, &model, 0.0).is_err());
        assert!(gain_exact(&src, &model, 1e-3).is_err());
        assert!(gain_exact(&src, &model, 1e-7).is_ok());
    }
}

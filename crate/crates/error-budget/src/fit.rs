//! Least-squares fits for the empirical curves: log-linear in the probe
//! count and power-law in the sample budget.

use crate::error::{BudgetError, Result};

/// Ordinary least-squares line through (x, y).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in y.
    pub residual_rms: f64,
    pub points: Vec<(f64, f64)>,
}

/// Power law y = prefactor / x^exponent, fitted on (ln x, ln y).
#[derive(Debug, Clone, PartialEq)]
pub struct PowerFit {
    pub prefactor: f64,
    pub exponent: f64,
    /// Root-mean-square residual in ln y.
    pub residual_rms: f64,
    pub points: Vec<(f64, f64)>,
}

pub fn linear_fit(points: &[(f64, f64)]) -> Result<LinearFit> {
    if points.len() < 2 {
        return Err(BudgetError::DegenerateFit);
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx.is_nan() || sxx <= 0.0 || !sxx.is_finite() || !sxy.is_finite() {
        return Err(BudgetError::DegenerateFit);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residual_sq: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    Ok(LinearFit {
        slope,
        intercept,
        residual_rms: (residual_sq / n).sqrt(),
        points: points.to_vec(),
    })
}

pub fn power_fit(points: &[(f64, f64)]) -> Result<PowerFit> {
    if points.iter().any(|&(x, y)| x.is_nan() || y.is_nan() || x <= 0.0 || y <= 0.0) {
        return Err(BudgetError::DomainError(
            "power-law fit requires strictly positive coordinates".into(),
        ));
    }
    let logged: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let line = linear_fit(&logged)?;
    Ok(PowerFit {
        prefactor: line.intercept.exp(),
        exponent: -line.slope,
        residual_rms: line.residual_rms,
        points: points.to_vec(),
    })
}

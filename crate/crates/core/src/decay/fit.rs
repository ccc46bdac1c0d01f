//! Log–log slope fits of norm series.

use crate::error::{Error, Result};

/// Fits with slope below this are treated as faster than any polynomial.
pub const EXPONENTIAL_SLOPE: f64 = -8.0;
/// Minimum number of samples inside a fit window.
pub const MIN_FIT_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPoint {
    pub t: f64,
    pub norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecayClass {
    Polynomial,
    Exponential,
}

impl DecayClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            DecayClass::Polynomial => "polynomial",
            DecayClass::Exponential => "exponential",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayFit {
    /// Fitted exponent of `t`; `-inf` when the norm underflows inside the window.
    pub slope: f64,
    pub intercept: f64,
    /// Largest deviation from the fitted line in `(ln t, ln norm)`.
    pub max_residual: f64,
    pub t_window: (f64, f64),
    pub points: usize,
    pub class: DecayClass,
}

/// Fits the last decade of the series.
pub fn fit_decay(series: &[SeriesPoint]) -> Result<DecayFit> {
    let t_max = series.iter().map(|p| p.t).fold(f64::NEG_INFINITY, f64::max);
    fit_decay_window(series, t_max / 10.0, t_max)
}

/// Fits the samples with `t_min <= t <= t_max` (relative slack `1e-9`).
pub fn fit_decay_window(series: &[SeriesPoint], t_min: f64, t_max: f64) -> Result<DecayFit> {
    let inside: Vec<SeriesPoint> = series
        .iter()
        .copied()
        .filter(|p| p.t >= t_min * (1.0 - 1e-9) && p.t <= t_max * (1.0 + 1e-9))
        .collect();
    if inside.len() < MIN_FIT_POINTS {
        return Err(Error::FitDomain(format!(
            "window [{t_min}, {t_max}] holds {} samples, need {MIN_FIT_POINTS}",
            inside.len()
        )));
    }
    if let Some(p) = inside.iter().find(|p| !(p.t > 0.0)) {
        return Err(Error::FitDomain(format!("time {} is not positive", p.t)));
    }
    if let Some(p) = inside.iter().find(|p| !(p.norm >= 0.0) || !p.norm.is_finite()) {
        return Err(Error::FitDomain(format!("norm {} at t = {}", p.norm, p.t)));
    }
    let window = (inside[0].t, inside[inside.len() - 1].t);
    if let Some(first_zero) = inside.iter().position(|p| p.norm == 0.0) {
        // Underflow is only meaningful as super-polynomial decay if it persists.
        if first_zero == 0 || inside[first_zero..].iter().any(|p| p.norm > 0.0) {
            return Err(Error::FitDomain(format!("norm vanishes at t = {}", inside[first_zero].t)));
        }
        return Ok(DecayFit {
            slope: f64::NEG_INFINITY,
            intercept: f64::NAN,
            max_residual: f64::NAN,
            t_window: window,
            points: inside.len(),
            class: DecayClass::Exponential,
        });
    }
    let xs: Vec<f64> = inside.iter().map(|p| p.t.ln()).collect();
    let ys: Vec<f64> = inside.iter().map(|p| p.norm.ln()).collect();
    let m = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / m;
    let ybar = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    if sxx == 0.0 {
        return Err(Error::FitDomain("fit window spans a single time".into()));
    }
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let max_residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (intercept + slope * x)).abs())
        .fold(0.0, f64::max);
    let class = if slope < EXPONENTIAL_SLOPE {
        DecayClass::Exponential
    } else {
        DecayClass::Polynomial
    };
    Ok(DecayFit {
        slope,
        intercept,
        max_residual,
        t_window: window,
        points: inside.len(),
        class,
    })
}

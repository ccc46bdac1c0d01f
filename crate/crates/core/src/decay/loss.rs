//! Exterior-zone decay class: polynomial (regularity loss) or exponential.

use crate::decay::fit::{fit_decay_window, DecayClass, DecayFit, SeriesPoint};
use crate::decay::series::{geometric_times, norm_series, ProblemSetup, Quantity};
use crate::error::Result;
use crate::quadrature::RadialProfile;
use crate::spectral::ZoneSelect;
use crate::symbols::{check_hypotheses, LossThreshold, ProbeConfig, SymbolSpec};

/// Probe times: `[1, 100]`, 17 geometric points.
pub const LOSS_TIMES: (f64, f64, usize) = (1.0, 100.0, 17);
/// Fit window inside the probe times.
pub const LOSS_FIT_WINDOW: (f64, f64) = (10.0, 100.0);
/// Slope tolerance for borderline data.
pub const LOSS_SLOPE_TOL: f64 = 0.1;

#[derive(Debug, Clone)]
pub struct LossReport {
    pub symbol: String,
    pub expected_class: DecayClass,
    pub measured_class: DecayClass,
    pub fit: DecayFit,
    pub series: Vec<SeriesPoint>,
    /// `-ell` when the data sits exactly at the regularity threshold.
    pub expected_slope: Option<f64>,
    pub tolerance: f64,
}

impl LossReport {
    pub fn passed(&self) -> bool {
        self.expected_class == self.measured_class
            && self
                .expected_slope
                .is_none_or(|want| (self.fit.slope - want).abs() <= self.tolerance)
    }
}

/// Whether `mu` is unbounded at infinity: declared metadata if present,
/// otherwise the probe's verdict.
pub fn has_loss(sym: &SymbolSpec) -> Result<bool> {
    match sym.declared_large_limit {
        Some(l) => Ok(l.is_infinite()),
        None => Ok(check_hypotheses(sym, &ProbeConfig::default())?.regularity_class == LossThreshold::Infinite),
    }
}

/// Local log-slope `d ln mu / d ln r` at `r`.
pub fn symbol_log_slope_at(sym: &SymbolSpec, r: f64) -> Result<f64> {
    let h = std::f64::consts::SQRT_2;
    let hi = sym.eval(r * h)?;
    let lo = sym.eval(r / h)?;
    Ok((hi.ln() - lo.ln()) / 2f64.ln())
}

/// Tail exponent `a` for which `mu^ell r^s (1 + r^2)^{-a/2}` sits on the
/// edge of square integrability in dimension `n`, using the log-slope of
/// `mu` at `cap`.
pub fn borderline_tail_exponent(sym: &SymbolSpec, n: u32, s: f64, ell: f64, cap: f64) -> Result<f64> {
    Ok(ell * symbol_log_slope_at(sym, cap)? + s + n as f64 / 2.0)
}

/// Fits the exterior-zone solution norm for `u0 = (1 + r^2)^{-a/2}`, `u1 = 0`.
pub fn regularity_loss_probe(sym: &SymbolSpec, n: u32, ell: f64, a_data: f64) -> Result<LossReport> {
    let mut p = ProblemSetup::new(sym.clone(), n, RadialProfile::algebraic_tail(a_data), RadialProfile::zero());
    p.ell0 = ell;
    p.validate()?;
    let (lo, hi, count) = LOSS_TIMES;
    let times = geometric_times(lo, hi, count)?;
    let series = norm_series(&p, Quantity::SolutionItself, ZoneSelect::Exterior, &times)?;
    let fit = fit_decay_window(&series, LOSS_FIT_WINDOW.0, LOSS_FIT_WINDOW.1)?;
    let loss = has_loss(sym)?;
    let expected_class = if loss { DecayClass::Polynomial } else { DecayClass::Exponential };
    let borderline = borderline_tail_exponent(sym, n, p.s, ell, p.r_cap / 2.0)?;
    let expected_slope = (loss && (a_data - borderline).abs() <= 1e-6 * a_data.abs().max(1.0)).then_some(-ell);
    Ok(LossReport {
        symbol: sym.label(),
        expected_class,
        measured_class: fit.class,
        fit,
        series,
        expected_slope,
        tolerance: LOSS_SLOPE_TOL,
    })
}

//! Supremum of admissible interior exponents.
//!
//! For `g(r) = r^{2s+n-1-2a} mu(r)^{-a}` the exponent `a` is admissible when
//! `g` is integrable near `0`. Integrability is decided from the limiting
//! local log-slope `d ln g / d ln r`, which splits as
//! `(2s + n - 1 - 2a) - a kappa` with `kappa = d ln mu / d ln r`; the slope of
//! `mu` is estimated once and the admissible set is then bisected.

use crate::error::{Error, Result};
use crate::spectral::ZonePartition;
use crate::symbols::SymbolSpec;

/// Convergence margin on the limiting log-slope (`p > -1 + margin`).
pub const SLOPE_MARGIN: f64 = 1e-3;
/// Largest exponent tried before reporting an unbounded set.
pub const ALPHA_CAP: f64 = 64.0;
const PROBE_K: std::ops::RangeInclusive<i32> = 20..=40;
const TREND_WINDOW: usize = 10;

#[derive(Debug, Clone)]
pub struct AlphaQuery {
    pub sym: SymbolSpec,
    pub n: u32,
    pub s: f64,
    /// Integration cap; probe radii never exceed it.
    pub eps: f64,
    /// Bisection width at which the midpoint is returned.
    pub tol: f64,
}

impl AlphaQuery {
    pub fn new(sym: SymbolSpec, n: u32, s: f64) -> Self {
        AlphaQuery {
            sym,
            n,
            s,
            eps: ZonePartition::default().eps,
            tol: 1e-2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaResult {
    Value(f64),
    /// Every exponent up to the cap is admissible.
    Unbounded,
}

impl AlphaResult {
    pub fn value(&self) -> Option<f64> {
        match self {
            AlphaResult::Value(v) => Some(*v),
            AlphaResult::Unbounded => None,
        }
    }
}

/// Local log-slopes of `mu` at `delta = 2^{-k}`, `k = 20..=40`.
pub fn symbol_log_slopes(sym: &SymbolSpec, eps: f64) -> Result<Vec<(f64, f64)>> {
    let h = std::f64::consts::SQRT_2;
    PROBE_K
        .map(|k| {
            let d = 2f64.powi(-k).min(eps / h);
            let hi = sym.eval(d * h)?;
            let lo = sym.eval(d / h)?;
            if !(hi > 0.0 && lo > 0.0 && hi.is_finite() && lo.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "alpha probe needs 0 < mu < inf near the origin; mu({}) = {lo}, mu({}) = {hi}",
                    d / h,
                    d * h
                )));
            }
            Ok((d, (hi.ln() - lo.ln()) / 2f64.ln()))
        })
        .collect()
}

/// Limiting value of the slope sequence, or `AlphaUndecided` if it
/// oscillates without a trend.
fn limiting_slope(slopes: &[(f64, f64)]) -> Result<f64> {
    let tail: Vec<f64> = slopes[slopes.len() - TREND_WINDOW..].iter().map(|p| p.1).collect();
    let spread = tail.iter().cloned().fold(f64::MIN, f64::max) - tail.iter().cloned().fold(f64::MAX, f64::min);
    let monotone = tail.windows(2).all(|w| w[1] >= w[0]) || tail.windows(2).all(|w| w[1] <= w[0]);
    if !monotone && spread > SLOPE_MARGIN {
        return Err(Error::AlphaUndecided { spread });
    }
    Ok(*tail.last().unwrap())
}

/// Local log-slope of the integrand at the deepest probe point.
pub fn integrand_log_slope(order: f64, kappa: f64, alpha: f64) -> f64 {
    (order - 1.0 - 2.0 * alpha) - alpha * kappa
}

pub fn alpha_sup(q: &AlphaQuery) -> Result<AlphaResult> {
    let order = 2.0 * q.s + q.n as f64;
    if q.n == 0 {
        return Err(Error::InvalidParameter("dimension n must be at least 1".into()));
    }
    if order <= 0.0 {
        return Err(Error::EmptyAlphaSet(order));
    }
    if !(q.tol > 0.0) || !(q.eps > 0.0) {
        return Err(Error::InvalidParameter("alpha query needs tol > 0 and eps > 0".into()));
    }
    let kappa = limiting_slope(&symbol_log_slopes(&q.sym, q.eps)?)?;
    let convergent = |a: f64| integrand_log_slope(order, kappa, a) > -1.0 + SLOPE_MARGIN;
    if !convergent(0.0) {
        return Ok(AlphaResult::Value(0.0));
    }
    let mut hi = 1.0;
    while convergent(hi) {
        if hi >= ALPHA_CAP {
            return Ok(AlphaResult::Unbounded);
        }
        hi *= 2.0;
    }
    let mut lo = 0.0;
    while hi - lo > q.tol {
        let mid = 0.5 * (lo + hi);
        if convergent(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(AlphaResult::Value(0.5 * (lo + hi)))
}

//! Damping symbols `mu(r)` and their limit classification.
//!
//! A symbol is a continuous, non-negative function of the radial frequency
//! `r = |xi|`. The catalog ships every family the laboratory is exercised
//! on; each entry carries declared limit metadata that downstream code uses
//! for branching (regularity-loss class, profile selection). The probe in
//! [`check_hypotheses`] measures the same limits by finite sampling and
//! reports disagreements without failing.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Names accepted by [`SymbolSpec::from_catalog`].
pub const SUPPORTED_NAMES: &[&str] = &[
    "fractional",
    "oscillating",
    "logarithmic",
    "k-log",
    "non-c1",
    "power-law",
    "hypC-log",
];

/// Classification of a limit at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LargeLimit {
    Finite(f64),
    Infinite,
}

impl LargeLimit {
    pub fn is_infinite(&self) -> bool {
        matches!(self, LargeLimit::Infinite)
    }
}

/// The functional form behind a symbol.
#[derive(Clone)]
pub enum SymbolKind {
    /// `p * r^beta`, `|beta| < 1`.
    Fractional { p: f64, beta: f64 },
    /// `p (1 + sin r) + q (1 + cos r)`.
    Oscillating { p: f64, q: f64 },
    /// `(log(1 + r))^gamma`, `gamma > -1`.
    Logarithmic { gamma: f64 },
    /// `k` nested applications of `x -> log(1 + x)` starting from `r`.
    KLog { k: u32 },
    /// `|(r - 1)^2 sin(1 / (r - 1))|`, extended by 0 at `r = 1`.
    NonC1,
    /// `r^beta`, `beta > -2`.
    PowerLaw { beta: f64 },
    /// `r^{-2} log(1 + r^{2 sigma})`, `sigma > 1/2`.
    HypCLog { sigma: f64 },
    /// Caller-supplied evaluator without declared metadata.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolKind::Fractional { p, beta } => write!(f, "Fractional(p={p}, beta={beta})"),
            SymbolKind::Oscillating { p, q } => write!(f, "Oscillating(p={p}, q={q})"),
            SymbolKind::Logarithmic { gamma } => write!(f, "Logarithmic(gamma={gamma})"),
            SymbolKind::KLog { k } => write!(f, "KLog(k={k})"),
            SymbolKind::NonC1 => write!(f, "NonC1"),
            SymbolKind::PowerLaw { beta } => write!(f, "PowerLaw(beta={beta})"),
            SymbolKind::HypCLog { sigma } => write!(f, "HypCLog(sigma={sigma})"),
            SymbolKind::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// A damping symbol with declared limit metadata.
///
/// Immutable after construction; cheap to clone and safe to share across
/// threads.
#[derive(Debug, Clone)]
pub struct SymbolSpec {
    name: String,
    params: BTreeMap<String, f64>,
    kind: SymbolKind,
    /// `lim_{r -> 0} r mu(r)`; `f64::INFINITY` when it diverges.
    pub declared_small_limit: Option<f64>,
    /// `lim_{r -> inf} mu(r)`. Bounded symbols without a limit declare their
    /// upper bound as `Finite`.
    pub declared_large_limit: Option<LargeLimit>,
    /// `lim_{r -> inf} r mu(r)`.
    pub declared_large_rmu: Option<LargeLimit>,
}

fn power_at_zero(coef: f64, exponent: f64) -> f64 {
    if exponent > 0.0 {
        0.0
    } else if exponent == 0.0 {
        coef
    } else {
        f64::INFINITY
    }
}

impl SymbolSpec {
    /// Builds a catalog symbol, filling unspecified parameters with defaults.
    pub fn from_catalog(name: &str, params: &BTreeMap<String, f64>) -> Result<Self> {
        let allowed: &[(&str, f64)] = match name {
            "fractional" => &[("p", 1.0), ("beta", 0.0)],
            "oscillating" => &[("p", 1.0), ("q", 1.0)],
            "logarithmic" => &[("gamma", 1.0)],
            "k-log" => &[("k", 2.0)],
            "non-c1" => &[],
            "power-law" => &[("beta", 1.0)],
            "hypC-log" => &[("sigma", 1.0)],
            _ => return Err(Error::UnknownSymbol(name.to_string())),
        };
        for key in params.keys() {
            if !allowed.iter().any(|(k, _)| k == key) {
                return Err(Error::InvalidParameter(format!(
                    "symbol `{name}` has no parameter `{key}`"
                )));
            }
        }
        let mut full = BTreeMap::new();
        for (key, default) in allowed {
            let v = params.get(*key).copied().unwrap_or(*default);
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name}: {key} must be finite")));
            }
            full.insert(key.to_string(), v);
        }
        let get = |k: &str| full[k];
        let bad = |msg: &str| Err(Error::InvalidParameter(format!("{name}: {msg}")));

        let kind = match name {
            "fractional" => {
                let (p, beta) = (get("p"), get("beta"));
                if p <= 0.0 {
                    return bad("p must be positive");
                }
                if beta.abs() >= 1.0 {
                    return bad("|beta| must be below 1");
                }
                SymbolKind::Fractional { p, beta }
            }
            "oscillating" => {
                let (p, q) = (get("p"), get("q"));
                if p <= 0.0 || q <= 0.0 {
                    return bad("p and q must be positive");
                }
                SymbolKind::Oscillating { p, q }
            }
            "logarithmic" => {
                let gamma = get("gamma");
                if gamma <= -1.0 {
                    return bad("gamma must exceed -1");
                }
                SymbolKind::Logarithmic { gamma }
            }
            "k-log" => {
                let k = get("k");
                if k < 1.0 || k.fract() != 0.0 || k > 16.0 {
                    return bad("k must be an integer in 1..=16");
                }
                SymbolKind::KLog { k: k as u32 }
            }
            "non-c1" => SymbolKind::NonC1,
            "power-law" => {
                let beta = get("beta");
                if beta <= -2.0 {
                    return bad("beta must exceed -2");
                }
                SymbolKind::PowerLaw { beta }
            }
            "hypC-log" => {
                let sigma = get("sigma");
                if sigma <= 0.5 {
                    return bad("sigma must exceed 1/2");
                }
                SymbolKind::HypCLog { sigma }
            }
            _ => unreachable!(),
        };
        let (small, large, large_rmu) = declared_limits(&kind);
        Ok(SymbolSpec {
            name: name.to_string(),
            params: full,
            kind,
            declared_small_limit: small,
            declared_large_limit: large,
            declared_large_rmu: large_rmu,
        })
    }

    /// Parses `name` or `name:key=value,key=value`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, rest) = match spec.split_once(':') {
            Some((n, r)) => (n.trim(), r.trim()),
            None => (spec.trim(), ""),
        };
        let mut params = BTreeMap::new();
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| {
                Error::InvalidParameter(format!("expected key=value, got `{item}`"))
            })?;
            let v: f64 = v.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("parameter `{}` is not a number", k.trim()))
            })?;
            params.insert(k.trim().to_string(), v);
        }
        Self::from_catalog(name, &params)
    }

    /// Wraps an arbitrary evaluator. No limit metadata is declared.
    pub fn custom(name: &str, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        SymbolSpec {
            name: name.to_string(),
            params: BTreeMap::new(),
            kind: SymbolKind::Custom(Arc::new(f)),
            declared_small_limit: None,
            declared_large_limit: None,
            declared_large_rmu: None,
        }
    }

    /// Shorthand for `mu = r^beta`.
    pub fn power_law(beta: f64) -> Result<Self> {
        Self::from_catalog("power-law", &BTreeMap::from([("beta".to_string(), beta)]))
    }

    /// `mu = 1`.
    pub fn constant_one() -> Self {
        Self::from_catalog("fractional", &BTreeMap::new()).expect("default fractional symbol")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &BTreeMap<String, f64> {
        &self.params
    }

    pub fn kind(&self) -> &SymbolKind {
        &self.kind
    }

    /// Label such as `power-law:beta=1`, stable across runs.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let body: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}:{}", self.name, body.join(";"))
    }

    /// True when the declared large-frequency limit of `mu` is infinite,
    /// i.e. decay estimates for high frequencies pay extra regularity.
    pub fn has_regularity_loss(&self) -> bool {
        matches!(self.declared_large_limit, Some(LargeLimit::Infinite))
    }

    fn raw(&self, r: f64) -> f64 {
        match &self.kind {
            SymbolKind::Fractional { p, beta } => {
                if r == 0.0 {
                    power_at_zero(*p, *beta)
                } else {
                    p * r.powf(*beta)
                }
            }
            SymbolKind::Oscillating { p, q } => p * (1.0 + r.sin()) + q * (1.0 + r.cos()),
            SymbolKind::Logarithmic { gamma } => r.ln_1p().powf(*gamma),
            SymbolKind::KLog { k } => (0..*k).fold(r, |x, _| x.ln_1p()),
            SymbolKind::NonC1 => {
                if r == 1.0 {
                    0.0
                } else {
                    let d = r - 1.0;
                    (d * d * (1.0 / d).sin()).abs()
                }
            }
            SymbolKind::PowerLaw { beta } => {
                if r == 0.0 {
                    power_at_zero(1.0, *beta)
                } else {
                    r.powf(*beta)
                }
            }
            SymbolKind::HypCLog { sigma } => {
                let exponent = 2.0 * sigma - 2.0;
                if r == 0.0 {
                    return power_at_zero(1.0, exponent);
                }
                let x = r.powf(2.0 * sigma);
                if x < 1e-8 {
                    // log(1+x)/x = 1 - x/2 + O(x^2)
                    r.powf(exponent) * (1.0 - 0.5 * x)
                } else {
                    x.ln_1p() / (r * r)
                }
            }
            SymbolKind::Custom(f) => f(r),
        }
    }

    /// Evaluates `mu(r)`. Singular symbols return `+inf` at `r = 0`.
    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::InvalidParameter(format!("mu evaluated at r = {r}")));
        }
        let v = self.raw(r);
        if v.is_nan() || v < 0.0 || (v.is_infinite() && r > 0.0) {
            return Err(Error::SymbolEvaluation {
                name: self.name.clone(),
                r,
                value: v,
            });
        }
        Ok(v)
    }
}

fn declared_limits(kind: &SymbolKind) -> (Option<f64>, Option<LargeLimit>, Option<LargeLimit>) {
    use LargeLimit::*;
    match *kind {
        SymbolKind::Fractional { p, beta } => {
            let large = if beta > 0.0 {
                Infinite
            } else if beta == 0.0 {
                Finite(p)
            } else {
                Finite(0.0)
            };
            (Some(0.0), Some(large), Some(Infinite))
        }
        SymbolKind::Oscillating { p, q } => {
            let bound = p + q + (p * p + q * q).sqrt();
            (Some(0.0), Some(Finite(bound)), Some(Infinite))
        }
        SymbolKind::Logarithmic { gamma } => {
            let large = if gamma > 0.0 {
                Infinite
            } else if gamma == 0.0 {
                Finite(1.0)
            } else {
                Finite(0.0)
            };
            (Some(0.0), Some(large), Some(Infinite))
        }
        SymbolKind::KLog { .. } | SymbolKind::NonC1 => (Some(0.0), Some(Infinite), Some(Infinite)),
        SymbolKind::PowerLaw { beta } => {
            let small = if beta > -1.0 {
                0.0
            } else if beta == -1.0 {
                1.0
            } else {
                f64::INFINITY
            };
            let large = if beta > 0.0 {
                Infinite
            } else if beta == 0.0 {
                Finite(1.0)
            } else {
                Finite(0.0)
            };
            let large_rmu = if beta > -1.0 {
                Infinite
            } else if beta == -1.0 {
                Finite(1.0)
            } else {
                Finite(0.0)
            };
            (Some(small), Some(large), Some(large_rmu))
        }
        SymbolKind::HypCLog { .. } => (Some(0.0), Some(Finite(0.0)), Some(Finite(0.0))),
        SymbolKind::Custom(_) => (None, None, None),
    }
}

/// Evaluates `mu(r)`; see [`SymbolSpec::eval`].
pub fn eval_mu(sym: &SymbolSpec, r: f64) -> Result<f64> {
    sym.eval(r)
}

/// Every catalog family at its default parameters.
pub fn builtin_catalog() -> Vec<SymbolSpec> {
    SUPPORTED_NAMES
        .iter()
        .map(|n| SymbolSpec::from_catalog(n, &BTreeMap::new()).expect("catalog defaults are valid"))
        .collect()
}

/// Geometric probe sequences for limit classification.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeConfig {
    /// Decreasing radii approaching 0.
    pub small: Vec<f64>,
    /// Increasing radii approaching infinity.
    pub large: Vec<f64>,
    /// Number of trailing steps inspected by the trend test.
    pub window: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            small: (1..=40).map(|k| 2f64.powi(-k)).collect(),
            large: (1..=40).map(|k| 2f64.powi(k)).collect(),
            window: 10,
        }
    }
}

/// Measured behaviour of a sampled quantity along a probe sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Trend {
    Zero,
    Infinite,
    Finite(f64),
}

/// Growth or decay factor the trend test demands over the window.
pub const TREND_FACTOR: f64 = 1.2;
/// Values at or below this are treated as zero when no trend is visible.
pub const ZERO_TOLERANCE: f64 = 1e-3;
const ENVELOPE_FACTOR: f64 = 4.0;
const SLOW_GROWTH_RATIO: f64 = 0.9;

/// Classifies the limit of `values` (ordered along the probe).
///
/// Returns the trend and whether the tail oscillated without a monotone
/// direction.
pub fn classify_trend(values: &[f64], window: usize) -> (Trend, bool) {
    let window = window.max(3).min(values.len().saturating_sub(1));
    let tail = &values[values.len() - window - 1..];
    let last = *tail.last().unwrap();
    if last.is_infinite() {
        return (Trend::Infinite, false);
    }
    let diffs: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    let increasing = diffs.iter().all(|&d| d > 0.0);
    let decreasing = diffs.iter().all(|&d| d < 0.0);
    let first = tail[0];
    let head_max = tail[..3].iter().cloned().fold(f64::MIN, f64::max);
    let head_min = tail[..3].iter().cloned().fold(f64::MAX, f64::min);
    let end_min = tail[tail.len() - 3..].iter().cloned().fold(f64::MAX, f64::min);
    let end_max = tail[tail.len() - 3..].iter().cloned().fold(f64::MIN, f64::max);

    if increasing && last >= TREND_FACTOR * first {
        return (Trend::Infinite, false);
    }
    if increasing {
        // Slowly varying divergence (iterated logarithms): increments stay
        // comparable instead of shrinking geometrically.
        let ratios: Vec<f64> = diffs.windows(2).map(|w| w[1] / w[0]).collect();
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        if mean >= SLOW_GROWTH_RATIO {
            return (Trend::Infinite, false);
        }
    }
    if decreasing && first >= TREND_FACTOR * last {
        return (Trend::Zero, false);
    }
    let oscillating = !increasing && !decreasing;
    if oscillating && end_min >= ENVELOPE_FACTOR * head_max {
        return (Trend::Infinite, true);
    }
    if oscillating && ENVELOPE_FACTOR * end_max <= head_min {
        return (Trend::Zero, true);
    }
    let spread = end_max - end_min;
    let ambiguous = oscillating && spread > ZERO_TOLERANCE * last.abs().max(1.0);
    if last.abs() <= ZERO_TOLERANCE {
        (Trend::Zero, ambiguous)
    } else {
        (Trend::Finite(last), ambiguous)
    }
}

/// Behaviour of `r mu(r)` at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LargeLimitKind {
    /// `1 / (r mu(r)) -> 0`.
    HypA,
    /// `r mu(r)` tends to a finite limit `c >= 0`.
    HypC,
    Fails,
}

/// Whether `mu` itself stays bounded at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LossThreshold {
    Finite,
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSample {
    pub r: f64,
    pub r_mu: f64,
    pub mu: f64,
}

/// Measured limit classification of a symbol.
#[derive(Debug, Clone)]
pub struct HypothesisReport {
    pub small_limit_ok: bool,
    pub small_trend: Trend,
    pub large_limit_kind: LargeLimitKind,
    pub large_rmu_trend: Trend,
    pub regularity_class: LossThreshold,
    pub large_mu_trend: Trend,
    /// Some probed tail oscillated without a monotone trend.
    pub ambiguous: bool,
    /// Small-r samples followed by large-r samples.
    pub evidence: Vec<ProbeSample>,
    /// Disagreements with the declared metadata (non-fatal).
    pub mismatches: Vec<Error>,
}

impl HypothesisReport {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Probes `r mu(r)` near 0 and `mu`, `r mu` near infinity.
pub fn check_hypotheses(sym: &SymbolSpec, probe: &ProbeConfig) -> Result<HypothesisReport> {
    if probe.small.len() < 4 || probe.large.len() < 4 {
        return Err(Error::InvalidParameter("probe sequences need at least 4 points".into()));
    }
    let sample = |r: f64| -> Result<ProbeSample> {
        let mu = sym.eval(r)?;
        Ok(ProbeSample { r, r_mu: r * mu, mu })
    };
    let small: Vec<ProbeSample> = probe.small.iter().map(|&r| sample(r)).collect::<Result<_>>()?;
    let large: Vec<ProbeSample> = probe.large.iter().map(|&r| sample(r)).collect::<Result<_>>()?;

    let small_q: Vec<f64> = small.iter().map(|s| s.r_mu).collect();
    let (small_trend, amb_small) = classify_trend(&small_q, probe.window);
    let small_limit_ok = small_trend == Trend::Zero;

    let rmu: Vec<f64> = large.iter().map(|s| s.r_mu).collect();
    let (large_rmu_trend, amb_rmu) = classify_trend(&rmu, probe.window);
    let large_limit_kind = match large_rmu_trend {
        Trend::Infinite => LargeLimitKind::HypA,
        Trend::Zero | Trend::Finite(_) if !amb_rmu => LargeLimitKind::HypC,
        _ => LargeLimitKind::Fails,
    };

    let mus: Vec<f64> = large.iter().map(|s| s.mu).collect();
    let (large_mu_trend, amb_mu) = classify_trend(&mus, probe.window);
    let regularity_class = if large_mu_trend == Trend::Infinite {
        LossThreshold::Infinite
    } else {
        LossThreshold::Finite
    };

    let mut mismatches = Vec::new();
    let mut mismatch = |detail: String| {
        mismatches.push(Error::MetadataMismatch {
            name: sym.label(),
            detail,
        })
    };
    if let Some(v) = sym.declared_small_limit {
        if (v == 0.0) != small_limit_ok {
            mismatch(format!("declared lim r mu(r) at 0 = {v}, measured {small_trend:?}"));
        }
    }
    if let Some(l) = sym.declared_large_limit {
        let measured_inf = regularity_class == LossThreshold::Infinite;
        if l.is_infinite() != measured_inf {
            mismatch(format!("declared lim mu = {l:?}, measured {large_mu_trend:?}"));
        }
    }
    if let Some(l) = sym.declared_large_rmu {
        let expected = if l.is_infinite() {
            LargeLimitKind::HypA
        } else {
            LargeLimitKind::HypC
        };
        if expected != large_limit_kind {
            mismatch(format!(
                "declared lim r mu = {l:?}, measured {large_rmu_trend:?} ({large_limit_kind:?})"
            ));
        }
    }

    let mut evidence = small;
    evidence.extend(large);
    Ok(HypothesisReport {
        small_limit_ok,
        small_trend,
        large_limit_kind,
        large_rmu_trend,
        regularity_class,
        large_mu_trend,
        ambiguous: amb_small || amb_rmu || amb_mu,
        evidence,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(spec: &str) -> SymbolSpec {
        SymbolSpec::parse(spec).unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(sym("fractional:beta=0").eval(3.7).unwrap(), 1.0);
        assert_eq!(sym("logarithmic:gamma=1").eval(0.0).unwrap(), 0.0);
        // p (1 + sin 0) + q (1 + cos 0) = p + 2q
        assert_eq!(sym("oscillating:p=1,q=1").eval(0.0).unwrap(), 3.0);
        assert_eq!(sym("non-c1").eval(1.0).unwrap(), 0.0);
        assert_eq!(sym("power-law:beta=1").eval(2.0).unwrap(), 2.0);
    }

    #[test]
    fn catalog_names() {
        let names: Vec<String> = builtin_catalog().iter().map(|s| s.name().to_string()).collect();
        for n in ["fractional", "oscillating", "logarithmic", "k-log", "non-c1", "power-law", "hypC-log"] {
            assert!(names.iter().any(|x| x == n), "{n} missing");
        }
    }

    #[test]
    fn singular_symbols_at_zero() {
        assert_eq!(sym("power-law:beta=-0.5").eval(0.0).unwrap(), f64::INFINITY);
        assert_eq!(sym("hypC-log:sigma=1").eval(0.0).unwrap(), 1.0);
        assert_eq!(sym("hypC-log:sigma=2").eval(0.0).unwrap(), 0.0);
        let tiny = 2f64.powi(-60);
        assert!((sym("hypC-log:sigma=1").eval(tiny).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn negative_custom_symbol_is_rejected() {
        let s = SymbolSpec::custom("neg", |r| r - 1.0);
        assert!(matches!(s.eval(0.5), Err(Error::SymbolEvaluation { .. })));
        let nan = SymbolSpec::custom("nan", |_| f64::NAN);
        assert!(nan.eval(1.0).is_err());
        assert!(s.eval(-1.0).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(SymbolSpec::parse("bogus"), Err(Error::UnknownSymbol(_))));
        assert!(SymbolSpec::parse("power-law:beta=-2").is_err());
        assert!(SymbolSpec::parse("fractional:beta=1").is_err());
        assert!(SymbolSpec::parse("k-log:k=1.5").is_err());
        assert!(SymbolSpec::parse("power-law:alpha=1").is_err());
        assert!(SymbolSpec::parse("power-law:beta=x").is_err());
    }

    #[test]
    fn klog_nests_logs() {
        let s = sym("k-log:k=2");
        let r: f64 = 3.0;
        assert!((s.eval(r).unwrap() - r.ln_1p().ln_1p()).abs() < 1e-15);
    }

    #[test]
    fn hypothesis_examples() {
        let p = ProbeConfig::default();
        let rep = check_hypotheses(&sym("power-law:beta=1"), &p).unwrap();
        assert!(rep.small_limit_ok);
        assert_eq!(rep.large_limit_kind, LargeLimitKind::HypA);
        assert_eq!(rep.regularity_class, LossThreshold::Infinite);

        let rep = check_hypotheses(&SymbolSpec::constant_one(), &p).unwrap();
        assert!(rep.small_limit_ok);
        assert_eq!(rep.large_limit_kind, LargeLimitKind::HypA);
        assert_eq!(rep.regularity_class, LossThreshold::Finite);

        let rep = check_hypotheses(&sym("hypC-log:sigma=1"), &p).unwrap();
        assert_eq!(rep.large_limit_kind, LargeLimitKind::HypC);
        assert_eq!(rep.evidence.len(), 80);
    }

    #[test]
    fn catalog_metadata_is_reproduced() {
        let p = ProbeConfig::default();
        for s in builtin_catalog() {
            let rep = check_hypotheses(&s, &p).unwrap();
            assert!(rep.is_consistent(), "{}: {:?}", s.label(), rep.mismatches);
        }
        for spec in ["k-log:k=1", "k-log:k=3", "k-log:k=5", "logarithmic:gamma=0.3",
                     "logarithmic:gamma=-0.5", "fractional:p=2,beta=-0.9",
                     "fractional:beta=0.5", "oscillating:p=0.5,q=3", "hypC-log:sigma=0.75"] {
            let rep = check_hypotheses(&sym(spec), &p).unwrap();
            assert!(rep.is_consistent(), "{spec}: {:?}", rep.mismatches);
        }
    }

    #[test]
    fn power_law_threshold_matrix() {
        let p = ProbeConfig::default();
        for beta in [-1.0, -0.5, 0.0, 0.5, 1.0, 2.0] {
            let s = SymbolSpec::power_law(beta).unwrap();
            let rep = check_hypotheses(&s, &p).unwrap();
            let expect = if beta > 0.0 { LossThreshold::Infinite } else { LossThreshold::Finite };
            assert_eq!(rep.regularity_class, expect, "beta = {beta}");
            assert!(rep.is_consistent(), "beta = {beta}: {:?}", rep.mismatches);
        }
        let rep = check_hypotheses(&SymbolSpec::power_law(-1.5).unwrap(), &p).unwrap();
        assert!(!rep.small_limit_ok);
        assert!(rep.is_consistent(), "{:?}", rep.mismatches);
    }

    #[test]
    fn declared_metadata_mismatch_is_reported() {
        let mut s = sym("power-law:beta=1");
        s.declared_large_limit = Some(LargeLimit::Finite(3.0));
        let rep = check_hypotheses(&s, &ProbeConfig::default()).unwrap();
        assert_eq!(rep.mismatches.len(), 1);
        assert!(matches!(rep.mismatches[0], Error::MetadataMismatch { .. }));
    }

    #[test]
    fn catalog_is_nonnegative_on_grid() {
        for s in builtin_catalog() {
            let min = (0..10_000)
                .map(|i| s.eval(100.0 * i as f64 / 9_999.0).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert!(min >= 0.0, "{}", s.label());
        }
    }

    #[test]
    fn catalog_is_continuous_at_test_resolution() {
        for s in builtin_catalog() {
            for i in 1..2000 {
                let r = i as f64 * 0.01;
                let h = 1e-9;
                let jump = (s.eval(r + h).unwrap() - s.eval(r).unwrap()).abs();
                assert!(jump < 1e-6, "{} jumps by {jump} at {r}", s.label());
            }
        }
    }

    #[test]
    fn trend_classifier_basics() {
        let grow: Vec<f64> = (1..=20).map(|k| k as f64).collect();
        assert_eq!(classify_trend(&grow, 10).0, Trend::Infinite);
        let flat = vec![2.0; 20];
        assert_eq!(classify_trend(&flat, 10).0, Trend::Finite(2.0));
        let geo_to_one: Vec<f64> = (1..=20).map(|k| 1.0 - 0.5f64.powi(k)).collect();
        assert!(matches!(classify_trend(&geo_to_one, 10).0, Trend::Finite(_)));
        let decay: Vec<f64> = (1..=20).map(|k| 0.5f64.powi(k)).collect();
        assert_eq!(classify_trend(&decay, 10).0, Trend::Zero);
    }
}

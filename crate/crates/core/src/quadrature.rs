//! Radial `L^2` norms over frequency zones.
//!
//! Norms are reduced by Plancherel and radial symmetry to
//! `sqrt(int f(r) r^{n-1} dr)`, with the surface-measure constant dropped.
//! Integrals use composite 15-point Gauss–Legendre panels with one level of
//! halving-based adaptivity per panel; the panel width is tied to the
//! oscillation hint so `sin(rt)`-type integrands stay resolved.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::spectral::{ZonePartition, ZoneSelect};
use crate::symbols::SymbolSpec;

const GAUSS_POINTS: usize = 15;
const MAX_DEPTH: u32 = 40;
const REL_TOL: f64 = 1e-10;
const GLOBAL_FLOOR: f64 = 1e-13;
/// Share of the total the last decade below the cap may hold.
pub const TAIL_RATIO: f64 = 1e-8;
/// Default truncation radius for unbounded zones.
pub const DEFAULT_R_CAP: f64 = 1e6;
/// Geometric growth of exterior panels.
const EXTERIOR_RATIO: f64 = 1.189_207_115_002_721; // 2^{1/4}

/// Nodes and weights of the 15-point Gauss–Legendre rule on `[-1, 1]`.
pub struct Gauss15 {
    pub nodes: [f64; GAUSS_POINTS],
    pub weights: [f64; GAUSS_POINTS],
}

impl Gauss15 {
    pub fn get() -> &'static Gauss15 {
        static RULE: OnceLock<Gauss15> = OnceLock::new();
        RULE.get_or_init(Gauss15::compute)
    }

    fn compute() -> Gauss15 {
        let n = GAUSS_POINTS;
        let mut nodes = [0.0; GAUSS_POINTS];
        let mut weights = [0.0; GAUSS_POINTS];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // three-term recurrence for P_n and its derivative
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        Gauss15 { nodes, weights }
    }

    /// Integral of `f` over `[a, b]`.
    pub fn integrate(&self, f: &dyn Fn(f64) -> Result<f64>, a: f64, b: f64) -> Result<f64> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut sum = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let r = mid + half * x;
            let v = f(r)?;
            if !v.is_finite() {
                return Err(Error::NonFiniteIntegrand { r });
            }
            sum += w * v;
        }
        Ok(sum * half)
    }
}

/// Family tag of a radial profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileFamily {
    /// `e^{-(r/scale)^2}`.
    Gaussian { scale: f64 },
    /// `(1 + r^2)^{-a/2}`.
    AlgebraicTail { a: f64 },
    Constant { value: f64 },
    Custom,
}

/// A radial function of the frequency: initial data or a multiplier.
#[derive(Clone)]
pub struct RadialProfile {
    pub family: ProfileFamily,
    custom: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
    /// `sup |f|`, a proxy for the `L^1` norm of the physical-space datum.
    pub l1_bound: Option<f64>,
    /// `(s, a)` for algebraic tails: `H^s` membership iff `a > s + n/2`.
    pub sobolev_tag: Option<(f64, f64)>,
}

impl fmt::Debug for RadialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialProfile")
            .field("family", &self.family)
            .field("l1_bound", &self.l1_bound)
            .field("sobolev_tag", &self.sobolev_tag)
            .finish()
    }
}

impl RadialProfile {
    pub fn gaussian(scale: f64) -> Self {
        RadialProfile {
            family: ProfileFamily::Gaussian { scale },
            custom: None,
            l1_bound: Some(1.0),
            sobolev_tag: None,
        }
    }

    pub fn algebraic_tail(a: f64) -> Self {
        RadialProfile {
            family: ProfileFamily::AlgebraicTail { a },
            custom: None,
            l1_bound: Some(1.0),
            sobolev_tag: Some((0.0, a)),
        }
    }

    pub fn constant(value: f64) -> Self {
        RadialProfile {
            family: ProfileFamily::Constant { value },
            custom: None,
            l1_bound: Some(value.abs()),
            sobolev_tag: None,
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn custom(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        RadialProfile {
            family: ProfileFamily::Custom,
            custom: Some(Arc::new(f)),
            l1_bound: None,
            sobolev_tag: None,
        }
    }

    /// Parses `gaussian[:scale=S]`, `algebraic:a=A`, `constant:value=V` or `zero`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, rest) = match spec.split_once(':') {
            Some((n, r)) => (n.trim(), r.trim()),
            None => (spec.trim(), ""),
        };
        let mut value = None;
        let key = match name {
            "gaussian" => "scale",
            "algebraic" => "a",
            "constant" => "value",
            "zero" => "",
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown data family `{name}`; supported: gaussian, algebraic, constant, zero"
                )))
            }
        };
        for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').unwrap_or((key, item));
            if k.trim() != key || key.is_empty() {
                return Err(Error::InvalidParameter(format!("data family `{name}` has no parameter `{}`", k.trim())));
            }
            let v: f64 = v.trim().parse().map_err(|_| {
                Error::InvalidParameter(format!("data parameter `{key}` is not a number"))
            })?;
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!("data parameter `{key}` must be finite")));
            }
            value = Some(v);
        }
        match name {
            "gaussian" => {
                let s = value.unwrap_or(1.0);
                if s <= 0.0 {
                    return Err(Error::InvalidParameter("gaussian scale must be positive".into()));
                }
                Ok(Self::gaussian(s))
            }
            "algebraic" => {
                let a = value.ok_or_else(|| Error::InvalidParameter("algebraic needs a=...".into()))?;
                if a < 0.0 {
                    return Err(Error::InvalidParameter("algebraic exponent must be non-negative".into()));
                }
                Ok(Self::algebraic_tail(a))
            }
            "constant" => Ok(Self::constant(value.unwrap_or(1.0))),
            _ => Ok(Self::zero()),
        }
    }

    /// Stable textual form, accepted back by [`RadialProfile::parse`].
    pub fn label(&self) -> String {
        match self.family {
            ProfileFamily::Gaussian { scale } => format!("gaussian:scale={scale}"),
            ProfileFamily::AlgebraicTail { a } => format!("algebraic:a={a}"),
            ProfileFamily::Constant { value } if value == 0.0 => "zero".into(),
            ProfileFamily::Constant { value } => format!("constant:value={value}"),
            ProfileFamily::Custom => "custom".into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.family, ProfileFamily::Constant { value } if value == 0.0)
    }

    pub fn eval(&self, r: f64) -> f64 {
        match self.family {
            ProfileFamily::Gaussian { scale } => {
                let x = r / scale;
                (-x * x).exp()
            }
            ProfileFamily::AlgebraicTail { a } => (-0.5 * a * (r * r).ln_1p()).exp(),
            ProfileFamily::Constant { value } => value,
            ProfileFamily::Custom => (self.custom.as_ref().expect("custom profile"))(r),
        }
    }
}

/// One radial norm evaluation.
pub struct NormRequest<'a> {
    /// Squared modulus before the radial weight `r^{n-1}`.
    pub integrand: &'a (dyn Fn(f64) -> Result<f64> + Sync),
    pub n: u32,
    pub zone: ZoneSelect,
    pub zp: ZonePartition,
    /// Oscillation frequency hint; integrands may oscillate at wavelength `2 pi / t_hint`.
    pub t_hint: f64,
    /// Truncation radius for the exterior zone.
    pub r_cap: f64,
    /// Multiplies the panel-width law (`0.5` halves every panel).
    pub panel_scale: f64,
}

impl<'a> NormRequest<'a> {
    pub fn new(integrand: &'a (dyn Fn(f64) -> Result<f64> + Sync), n: u32, zone: ZoneSelect) -> Self {
        NormRequest {
            integrand,
            n,
            zone,
            zp: ZonePartition::default(),
            t_hint: 0.0,
            r_cap: DEFAULT_R_CAP,
            panel_scale: 1.0,
        }
    }
}

fn adapt(
    rule: &Gauss15,
    f: &dyn Fn(f64) -> Result<f64>,
    a: f64,
    b: f64,
    coarse: f64,
    floor: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let left = rule.integrate(f, a, m)?;
    let right = rule.integrate(f, m, b)?;
    let fine = left + right;
    if (fine - coarse).abs() <= (REL_TOL * fine.abs()).max(floor) || depth >= MAX_DEPTH || m <= a || m >= b {
        return Ok(fine);
    }
    Ok(adapt(rule, f, a, m, left, floor, depth + 1)? + adapt(rule, f, m, b, right, floor, depth + 1)?)
}

/// Panels `[a, b]` covering a zone segment.
fn uniform_panels(a: f64, b: f64, t_hint: f64, scale: f64) -> Vec<(f64, f64)> {
    let width = b - a;
    let h = (width / 16.0).min(std::f64::consts::PI / (8.0 * t_hint.max(1.0))) * scale;
    let m = (width / h).ceil().max(1.0) as usize;
    (0..m)
        .map(|i| {
            let lo = a + width * i as f64 / m as f64;
            let hi = if i + 1 == m { b } else { a + width * (i + 1) as f64 / m as f64 };
            (lo, hi)
        })
        .collect()
}

fn geometric_panels(a: f64, b: f64, scale: f64) -> Vec<(f64, f64)> {
    let ratio = EXTERIOR_RATIO.powf(scale.min(1.0));
    let m = ((b / a).ln() / ratio.ln()).ceil().max(1.0) as usize;
    let step = (b / a).ln() / m as f64;
    (0..m)
        .map(|i| {
            let lo = a * (step * i as f64).exp();
            let hi = if i + 1 == m { b } else { a * (step * (i + 1) as f64).exp() };
            (lo, hi)
        })
        .collect()
}

/// Panels grading geometrically into `0` inside `[0, h]`.
fn origin_panels(h: f64) -> impl Iterator<Item = (f64, f64)> {
    (0..120).map(move |k| (h * 0.5f64.powi(k + 1), h * 0.5f64.powi(k)))
}

struct Segment {
    panels: Vec<(f64, f64)>,
    /// First panel touches the origin and gets geometric grading.
    from_origin: bool,
}

fn integrate_panels(
    rule: &Gauss15,
    f: &dyn Fn(f64) -> Result<f64>,
    seg: &Segment,
    floor: f64,
) -> Result<(f64, Vec<f64>)> {
    let mut total = 0.0;
    let mut parts = Vec::with_capacity(seg.panels.len());
    for (i, &(a, b)) in seg.panels.iter().enumerate() {
        let v = if i == 0 && seg.from_origin {
            let mut acc = 0.0;
            for (lo, hi) in origin_panels(b - a) {
                let c = rule.integrate(f, lo, hi)?;
                let piece = adapt(rule, f, lo, hi, c, floor, 0)?;
                acc += piece;
                if piece.abs() <= 1e-17 * acc.abs() || (acc == 0.0 && hi < 1e-300) {
                    break;
                }
            }
            acc
        } else {
            let c = rule.integrate(f, a, b)?;
            adapt(rule, f, a, b, c, floor, 0)?
        };
        total += v;
        parts.push(v);
    }
    Ok((total, parts))
}

/// `sqrt(int_zone integrand(r) r^{n-1} dr)`.
pub fn radial_l2(req: &NormRequest<'_>) -> Result<f64> {
    if req.n == 0 {
        return Err(Error::InvalidParameter("dimension n must be at least 1".into()));
    }
    if !(req.panel_scale > 0.0) {
        return Err(Error::InvalidParameter("panel scale must be positive".into()));
    }
    let zp = req.zp;
    let with_exterior = matches!(req.zone, ZoneSelect::Exterior | ZoneSelect::All);
    if with_exterior && !(req.r_cap > zp.big_n * 10.0) {
        return Err(Error::InvalidParameter(format!(
            "r_cap = {} must exceed 10 N = {}",
            req.r_cap,
            zp.big_n * 10.0
        )));
    }
    let nm1 = (req.n - 1) as i32;
    let f = |r: f64| -> Result<f64> {
        let v = (req.integrand)(r)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteIntegrand { r });
        }
        // zero integrand wins over any weight
        Ok(if v == 0.0 { 0.0 } else { v * r.powi(nm1) })
    };
    let rule = Gauss15::get();
    let (t, s) = (req.t_hint, req.panel_scale);

    let mut segments = Vec::new();
    if matches!(req.zone, ZoneSelect::Interior | ZoneSelect::All) {
        segments.push(Segment { panels: uniform_panels(0.0, zp.eps, t, s), from_origin: true });
    }
    if matches!(req.zone, ZoneSelect::Bounded | ZoneSelect::All) {
        segments.push(Segment { panels: uniform_panels(zp.eps, zp.big_n, t, s), from_origin: false });
    }
    let tail_start = req.r_cap / 10.0;
    if with_exterior {
        segments.push(Segment { panels: geometric_panels(zp.big_n, tail_start, s), from_origin: false });
        segments.push(Segment { panels: geometric_panels(tail_start, req.r_cap, s), from_origin: false });
    }

    // Coarse pass fixes the absolute floor of the adaptive refinement.
    let mut coarse = 0.0;
    for seg in &segments {
        for &(a, b) in &seg.panels {
            coarse += rule.integrate(&f, a, b)?.abs();
        }
    }
    let floor = GLOBAL_FLOOR * coarse;

    let mut total = 0.0;
    let mut tail = 0.0;
    let count = segments.len();
    for (i, seg) in segments.iter().enumerate() {
        let (v, _) = integrate_panels(rule, &f, seg, floor)?;
        total += v;
        if with_exterior && i + 1 == count {
            tail = v;
        }
    }
    if total <= 0.0 {
        return Ok(0.0);
    }
    if with_exterior && tail > TAIL_RATIO * total {
        return Err(Error::TailNotConverged { ratio: tail / total });
    }
    Ok(total.sqrt())
}

/// `|| chi_int r^s e^{-c r^2 mu(r) t} ||` in dimension `n`.
pub fn multiplier_small_norm(sym: &SymbolSpec, n: u32, s: f64, c: f64, t: f64, zp: &ZonePartition) -> Result<f64> {
    let order = 2.0 * s + n as f64;
    if order <= 0.0 {
        return Err(Error::DivergentSmallFrequency(order));
    }
    if !(c > 0.0) || !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!("need c > 0 and t >= 0, got c = {c}, t = {t}")));
    }
    let integrand = |r: f64| -> Result<f64> {
        let mu = sym.eval(r)?;
        let decay = if t == 0.0 { 1.0 } else { (-2.0 * c * r * r * mu * t).exp() };
        Ok(if decay == 0.0 { 0.0 } else { r.powf(2.0 * s) * decay })
    };
    let mut req = NormRequest::new(&integrand, n, ZoneSelect::Interior);
    req.zp = *zp;
    radial_l2(&req)
}

/// Exterior probe grid `N 2^{k/4}` up to `2^40`.
pub fn exterior_probe_grid(zp: &ZonePartition) -> Vec<f64> {
    let cap = 2f64.powi(40);
    let mut out = Vec::new();
    let mut k = 0;
    loop {
        let r = zp.big_n * 2f64.powf(k as f64 / 4.0);
        if r >= cap {
            out.push(cap);
            break;
        }
        out.push(r);
        k += 1;
    }
    out
}

/// `sup_{r >= N} mu(r)^{-ell} e^{-c t / mu(r)}` on the exterior probe grid.
///
/// Symbols with a bounded large-frequency limit return the exponential
/// envelope `e^{-c t / sup mu}` instead.
pub fn multiplier_large_factor(sym: &SymbolSpec, ell: f64, c: f64, t: f64, zp: &ZonePartition) -> Result<f64> {
    if !(ell >= 0.0) || !(c > 0.0) || !(t >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need ell >= 0, c > 0, t >= 0; got ell = {ell}, c = {c}, t = {t}"
        )));
    }
    let grid = exterior_probe_grid(zp);
    let mus: Vec<f64> = grid.iter().map(|&r| sym.eval(r)).collect::<Result<_>>()?;
    if !sym.has_regularity_loss() {
        let sup = mus.iter().cloned().fold(0.0, f64::max);
        if sup == 0.0 {
            return Ok(if t == 0.0 { 1.0 } else { 0.0 });
        }
        return Ok((-c * t / sup).exp());
    }
    let mut best = 0.0f64;
    for mu in mus {
        if mu == 0.0 {
            continue;
        }
        best = best.max(mu.powf(-ell) * (-c * t / mu).exp());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn interior_eps(eps: f64) -> ZonePartition {
        ZonePartition::new(eps, eps * 2.0).unwrap()
    }

    #[test]
    fn gauss_rule_is_exact_to_degree_29() {
        let rule = Gauss15::get();
        let wsum: f64 = rule.weights.iter().sum();
        assert_relative_eq!(wsum, 2.0, epsilon = 1e-14);
        for deg in 0..=29 {
            let f = |x: f64| Ok(x.powi(deg));
            let got = rule.integrate(&f, 0.0, 1.0).unwrap();
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((got - exact).abs() <= 1e-12, "degree {deg}: {got} vs {exact}");
        }
    }

    #[test]
    fn radial_examples() {
        let f = |r: f64| Ok(r * r);
        let mut req = NormRequest::new(&f, 1, ZoneSelect::Interior);
        req.zp = interior_eps(1.0);
        assert_relative_eq!(radial_l2(&req).unwrap(), (1.0f64 / 3.0).sqrt(), max_relative = 1e-12);

        let one = |_: f64| Ok(1.0);
        let mut req = NormRequest::new(&one, 2, ZoneSelect::Bounded);
        req.zp = ZonePartition::new(1.0, 2.0).unwrap();
        assert_relative_eq!(radial_l2(&req).unwrap(), 1.5f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn heat_integrand_slope() {
        let norm = |t: f64| {
            let f = move |r: f64| Ok((-2.0 * r * r * t).exp());
            radial_l2(&NormRequest::new(&f, 3, ZoneSelect::Interior)).unwrap()
        };
        let slope = (norm(400.0) / norm(100.0)).ln() / 4f64.ln();
        assert!((slope + 0.75).abs() < 0.02, "slope {slope}");
        // squared norm gives the t^{-3/2} law
        assert!((2.0 * slope + 1.5).abs() < 0.02);
    }

    #[test]
    fn singular_weight_at_origin() {
        // int_0^1 r^{-1/2} dr = 2
        let f = |r: f64| Ok(r.powf(-0.5));
        let mut req = NormRequest::new(&f, 1, ZoneSelect::Interior);
        req.zp = interior_eps(1.0);
        assert_relative_eq!(radial_l2(&req).unwrap(), 2f64.sqrt(), max_relative = 1e-9);
    }

    #[test]
    fn exterior_tail() {
        // int_2^inf r^{-4} r^2 dr = 1/2
        let f = |r: f64| Ok(r.powi(-4));
        let mut req = NormRequest::new(&f, 3, ZoneSelect::Exterior);
        req.r_cap = 1e12;
        assert_relative_eq!(radial_l2(&req).unwrap(), 0.5f64.sqrt(), max_relative = 1e-6);
        let slow = |r: f64| Ok(r.powf(-3.5));
        let req = NormRequest::new(&slow, 3, ZoneSelect::Exterior);
        assert!(matches!(radial_l2(&req), Err(Error::TailNotConverged { .. })));
        let zero = |_: f64| Ok(0.0);
        assert_eq!(radial_l2(&NormRequest::new(&zero, 3, ZoneSelect::All)).unwrap(), 0.0);
    }

    #[test]
    fn non_finite_integrand() {
        let f = |r: f64| Ok(if r > 0.25 { f64::NAN } else { 1.0 });
        let req = NormRequest::new(&f, 1, ZoneSelect::Interior);
        assert!(matches!(radial_l2(&req), Err(Error::NonFiniteIntegrand { .. })));
    }

    #[test]
    fn oscillatory_halving_self_check() {
        let zp = ZonePartition::default();
        for n in [1u32, 2, 3] {
            for t in [1.0, 10.0, 100.0, 1000.0] {
                let f = move |r: f64| Ok(((r * t).sin() / r).powi(2) * (-2.0 * 0.5 * r * r * t).exp());
                let mut req = NormRequest::new(&f, n, ZoneSelect::Interior);
                req.zp = zp;
                req.t_hint = t;
                let a = radial_l2(&req).unwrap();
                req.panel_scale = 0.5;
                let b = radial_l2(&req).unwrap();
                assert!((a - b).abs() <= 1e-6 * a, "n={n} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn small_norm_examples() {
        let zp = ZonePartition::default();
        let one = SymbolSpec::constant_one();
        let v = multiplier_small_norm(&one, 3, 0.0, 1.0, 0.0, &zp).unwrap();
        assert_relative_eq!(v, 0.5f64.powf(1.5) / 3f64.sqrt(), max_relative = 1e-10);
        assert!(matches!(
            multiplier_small_norm(&one, 2, -1.0, 1.0, 1.0, &zp),
            Err(Error::DivergentSmallFrequency(_))
        ));
    }

    #[test]
    fn small_norm_is_monotone_in_t() {
        let zp = ZonePartition::default();
        for sym in crate::symbols::builtin_catalog() {
            let mut prev = f64::INFINITY;
            for k in 0..12 {
                let t = if k == 0 { 0.0 } else { 10f64.powf((k - 1) as f64 * 0.4) };
                let v = multiplier_small_norm(&sym, 3, 0.0, 0.5, t, &zp).unwrap();
                assert!(v <= prev * (1.0 + 1e-12), "{} at t={t}", sym.label());
                prev = v;
            }
        }
    }

    #[test]
    fn large_factor_examples() {
        let zp = ZonePartition::default();
        let one = SymbolSpec::constant_one();
        assert_relative_eq!(multiplier_large_factor(&one, 0.0, 1.0, 5.0, &zp).unwrap(), (-5f64).exp(), max_relative = 1e-14);
        let lin = SymbolSpec::power_law(1.0).unwrap();
        let a = multiplier_large_factor(&lin, 1.0, 1.0, 10.0, &zp).unwrap();
        let b = multiplier_large_factor(&lin, 1.0, 1.0, 100.0, &zp).unwrap();
        assert!((b / a / 0.1 - 1.0).abs() < 0.15, "ratio {}", b / a);
        assert_relative_eq!(multiplier_large_factor(&lin, 1.0, 1.0, 0.0, &zp).unwrap(), 0.5, max_relative = 1e-15);
    }

    #[test]
    fn profile_parsing() {
        assert_eq!(RadialProfile::parse("gaussian").unwrap().family, ProfileFamily::Gaussian { scale: 1.0 });
        assert_eq!(RadialProfile::parse("algebraic:a=2.5").unwrap().family, ProfileFamily::AlgebraicTail { a: 2.5 });
        assert!(RadialProfile::parse("zero").unwrap().is_zero());
        assert!(RadialProfile::parse("wavelet").is_err());
        assert!(RadialProfile::parse("algebraic").is_err());
        for s in ["gaussian:scale=2", "algebraic:a=3", "constant:value=1.5", "zero"] {
            assert_eq!(RadialProfile::parse(s).unwrap().label(), s);
        }
        let g = RadialProfile::gaussian(2.0);
        assert_relative_eq!(g.eval(2.0), (-1f64).exp());
        assert_relative_eq!(RadialProfile::algebraic_tail(2.0).eval(3.0), 0.1, max_relative = 1e-14);
    }
}

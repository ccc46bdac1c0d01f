//! Per-frequency solution machinery.
//!
//! For a fixed radial frequency `r` the Fourier transform of the solution
//! obeys `u'' + mu(r) r^2 u' + r^2 u = 0`, so
//! `u(t, r) = k0(t, r) u0(r) + k1(t, r) u1(r)`. Everything here is evaluated
//! in real arithmetic and is stable across the oscillatory, confluent and
//! overdamped regimes.

use crate::error::{Error, Result};
use crate::quadrature::RadialProfile;
use crate::symbols::SymbolSpec;

/// Half-width of the band `|mu^2 r^2 - 4| <= tol` treated as confluent.
pub const CONFLUENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Oscillatory,
    Confluent,
    Overdamped,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Oscillatory => "oscillatory",
            Regime::Confluent => "confluent",
            Regime::Overdamped => "overdamped",
        }
    }
}

/// Roots of `lambda^2 + mu r^2 lambda + r^2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharRoots {
    pub lambda_plus: Complex,
    pub lambda_minus: Complex,
    pub regime: Regime,
    /// `mu^2 r^2 - 4`.
    pub discriminant: f64,
}

fn discriminant(mu: f64, r: f64) -> f64 {
    let m = mu * r;
    m * m - 4.0
}

fn regime_of(disc: f64) -> Regime {
    if disc < -CONFLUENT_TOL {
        Regime::Oscillatory
    } else if disc > CONFLUENT_TOL {
        Regime::Overdamped
    } else {
        Regime::Confluent
    }
}

/// Real overdamped pair `(lambda_plus, lambda_minus)`, `lambda_minus < lambda_plus < 0`.
fn overdamped_pair(mu: f64, r: f64) -> (f64, f64) {
    let m = mu * r;
    // sqrt(m^2 - 4) without squaring a possibly huge m
    let root = m * (1.0 - 4.0 / (m * m)).sqrt();
    let lp = -2.0 * r / (m + root);
    (lp, r * r / lp)
}

pub fn char_roots(mu_val: f64, r: f64) -> CharRoots {
    let disc = discriminant(mu_val, r);
    let regime = regime_of(disc);
    let a = -0.5 * mu_val * r * r;
    let (lambda_plus, lambda_minus) = match regime {
        Regime::Oscillatory => {
            let w = 0.5 * r * (-disc).sqrt();
            (Complex { re: a, im: w }, Complex { re: a, im: -w })
        }
        Regime::Confluent => (Complex { re: a, im: 0.0 }, Complex { re: a, im: 0.0 }),
        Regime::Overdamped => {
            let (lp, lm) = overdamped_pair(mu_val, r);
            (Complex { re: lp, im: 0.0 }, Complex { re: lm, im: 0.0 })
        }
    };
    CharRoots {
        lambda_plus,
        lambda_minus,
        regime,
        discriminant: disc,
    }
}

/// `r^2 mu / (1 + r^2 mu^2)`: the per-mode energy decay rate.
pub fn key_rho(mu_val: f64, r: f64) -> f64 {
    let r2 = r * r;
    if r2 == 0.0 || mu_val == 0.0 {
        return 0.0;
    }
    if mu_val.is_infinite() {
        return 0.0;
    }
    // r^2 mu / (1 + r^2 mu^2) = 1 / (1/(r^2 mu) + mu) avoids overflow of r^2 mu^2
    1.0 / (1.0 / (r2 * mu_val) + mu_val)
}

/// Kernel and profile-multiplier values at one `(t, r)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub t: f64,
    pub r: f64,
    pub mu: f64,
    pub regime: Regime,
    pub k0: f64,
    pub k1: f64,
    /// Time derivatives of `k0`, `k1`.
    pub dk0: f64,
    pub dk1: f64,
    pub g0: f64,
    /// `None` where the multiplier is singular (`r = 0` or `mu = 0`).
    pub g1: Option<f64>,
    pub h0: f64,
    pub h1: f64,
}

impl KernelValue {
    pub fn g1(&self) -> Result<f64> {
        self.g1.ok_or(Error::ProfileSingularity {
            r: self.r,
            mu: self.mu,
        })
    }
}

/// `(cosh sqrt z, sinh sqrt z / sqrt z)` times `e^{shift}`, continued to
/// `z < 0` through `cos`, `sin`.
fn scaled_cs(z: f64, shift: f64) -> (f64, f64) {
    if z.abs() < 1e-4 {
        let c = 1.0 + z / 2.0 * (1.0 + z / 12.0 * (1.0 + z / 30.0));
        let s = 1.0 + z / 6.0 * (1.0 + z / 20.0 * (1.0 + z / 42.0));
        let e = shift.exp();
        (e * c, e * s)
    } else if z > 0.0 {
        let q = z.sqrt();
        let up = (shift + q).exp();
        let down = (shift - q).exp();
        (0.5 * (up + down), 0.5 * (up - down) / q)
    } else {
        let q = (-z).sqrt();
        let e = shift.exp();
        (e * q.cos(), e * q.sin() / q)
    }
}

/// Kernel values from a precomputed `mu = mu(r)`.
pub fn kernels_with_mu(t: f64, r: f64, mu: f64) -> KernelValue {
    let g0 = if t == 0.0 { 1.0 } else { (-t / mu).exp() };
    if r == 0.0 {
        return KernelValue {
            t,
            r,
            mu,
            regime: Regime::Oscillatory,
            k0: 1.0,
            k1: t,
            dk0: 0.0,
            dk1: 1.0,
            g0,
            g1: None,
            h0: 1.0,
            h1: t,
        };
    }
    let r2 = r * r;
    let damp = mu * r2;
    let a = -0.5 * damp;
    let disc = discriminant(mu, r);
    let regime = regime_of(disc);
    let (k0, k1, dk1) = match regime {
        Regime::Overdamped => {
            let (lp, lm) = overdamped_pair(mu, r);
            let gap = lp - lm;
            let ep = (lp * t).exp();
            let k1 = ep * (-(-gap * t).exp_m1()) / gap;
            let k0 = ep - lp * k1;
            let dk1 = (lp * ep - lm * (lm * t).exp()) / gap;
            (k0, k1, dk1)
        }
        _ => {
            // Uniform form in the oscillatory regime and across the confluent
            // band; reduces to e^{at}(1 - at), t e^{at} at the double root.
            let z = r2 * disc * t * t / 4.0;
            let (c, s) = scaled_cs(z, a * t);
            (c - a * t * s, t * s, c + a * t * s)
        }
    };
    let g1 = if mu == 0.0 || mu.is_infinite() {
        None
    } else {
        Some(g0 / damp)
    };
    let heat = (a * t).exp();
    KernelValue {
        t,
        r,
        mu,
        regime,
        k0,
        k1,
        dk0: -r2 * k1,
        dk1,
        g0,
        g1,
        h0: (r * t).cos() * heat,
        h1: (r * t).sin() / r * heat,
    }
}

pub fn kernels(t: f64, r: f64, sym: &SymbolSpec) -> Result<KernelValue> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter(format!("kernels evaluated at t = {t}")));
    }
    let mu = sym.eval(r)?;
    Ok(kernels_with_mu(t, r, mu))
}

/// `k0 u0(r) + k1 u1(r)`.
pub fn fourier_solution(
    t: f64,
    r: f64,
    sym: &SymbolSpec,
    u0hat: &RadialProfile,
    u1hat: &RadialProfile,
) -> Result<f64> {
    let k = kernels(t, r, sym)?;
    let a = u0hat.eval(r);
    let b = u1hat.eval(r);
    // Skip zero data so that k1 = t growth at r = 0 never meets 0 * inf.
    let mut v = 0.0;
    if a != 0.0 {
        v += k.k0 * a;
    }
    if b != 0.0 {
        v += k.k1 * b;
    }
    Ok(v)
}

/// Sharp frequency-zone split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZonePartition {
    pub eps: f64,
    pub big_n: f64,
}

impl Default for ZonePartition {
    fn default() -> Self {
        ZonePartition {
            eps: 0.5,
            big_n: 2.0,
        }
    }
}

impl ZonePartition {
    pub fn new(eps: f64, big_n: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < big_n && big_n.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "zone partition needs 0 < eps < N, got eps = {eps}, N = {big_n}"
            )));
        }
        Ok(ZonePartition { eps, big_n })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Zone {
    Interior,
    Bounded,
    Exterior,
}

/// A zone or the whole frequency half-line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZoneSelect {
    Interior,
    Bounded,
    Exterior,
    All,
}

impl ZoneSelect {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZoneSelect::Interior => "interior",
            ZoneSelect::Bounded => "bounded",
            ZoneSelect::Exterior => "exterior",
            ZoneSelect::All => "all",
        }
    }
}

impl From<Zone> for ZoneSelect {
    fn from(z: Zone) -> Self {
        match z {
            Zone::Interior => ZoneSelect::Interior,
            Zone::Bounded => ZoneSelect::Bounded,
            Zone::Exterior => ZoneSelect::Exterior,
        }
    }
}

impl std::str::FromStr for ZoneSelect {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "interior" => Ok(ZoneSelect::Interior),
            "bounded" => Ok(ZoneSelect::Bounded),
            "exterior" => Ok(ZoneSelect::Exterior),
            "all" => Ok(ZoneSelect::All),
            _ => Err(Error::InvalidParameter(format!("unknown zone `{s}`"))),
        }
    }
}

pub fn zone_of(r: f64, zp: &ZonePartition) -> Zone {
    if r <= zp.eps {
        Zone::Interior
    } else if r < zp.big_n {
        Zone::Bounded
    } else {
        Zone::Exterior
    }
}

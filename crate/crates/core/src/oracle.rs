//! Brute-force per-mode integration and numerical checks of the per-mode
//! Lyapunov functional.
//!
//! The integrator deliberately knows nothing about characteristic roots so
//! it can serve as an independent reference for [`crate::spectral`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectral::{key_rho, kernels_with_mu, Regime};
use crate::symbols::SymbolSpec;

/// Largest number of steps a single integration may take.
pub const STEP_BUDGET: f64 = 1e8;

/// `(u, u_t)` at one frequency and time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeState {
    pub u: f64,
    pub v: f64,
    pub t: f64,
}

/// Largest step allowed for a mode with damping `mu r^2`.
pub fn step_guard(r: f64, mu: f64) -> f64 {
    0.1f64.min(0.5 / (1.0 + mu * r * r)).min(0.5 / (1.0 + r))
}

/// Classical RK4 for `u'' + mu r^2 u' + r^2 u = 0`, sampled at every step.
///
/// The step is shrunk so that an integer number of steps lands on `t_end`.
pub fn rk4_mode(r: f64, sym: &SymbolSpec, u0: f64, v0: f64, t_end: f64, dt: f64) -> Result<Vec<ModeState>> {
    let mu = sym.eval(r)?;
    let mut out = Vec::new();
    rk4_drive(r, mu, u0, v0, t_end, dt, |s| out.push(s))?;
    Ok(out)
}

/// Final state only; avoids storing long trajectories.
pub fn rk4_endpoint(r: f64, sym: &SymbolSpec, u0: f64, v0: f64, t_end: f64, dt: f64) -> Result<ModeState> {
    let mu = sym.eval(r)?;
    let mut last = ModeState { u: u0, v: v0, t: 0.0 };
    rk4_drive(r, mu, u0, v0, t_end, dt, |s| last = s)?;
    Ok(last)
}

fn rk4_drive(
    r: f64,
    mu: f64,
    u0: f64,
    v0: f64,
    t_end: f64,
    dt: f64,
    mut emit: impl FnMut(ModeState),
) -> Result<()> {
    if !(t_end >= 0.0 && t_end.is_finite()) || !(dt > 0.0) || !(r >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "rk4 needs t_end >= 0, dt > 0, r >= 0; got t_end = {t_end}, dt = {dt}, r = {r}"
        )));
    }
    let guard = step_guard(r, mu);
    if dt > guard * (1.0 + 1e-12) {
        return Err(Error::InvalidParameter(format!("dt = {dt} exceeds the stability guard {guard}")));
    }
    let steps = (t_end / dt).ceil();
    if steps > STEP_BUDGET {
        return Err(Error::OracleBudget { steps });
    }
    let steps = steps as u64;
    let h = if steps == 0 { 0.0 } else { t_end / steps as f64 };
    let damp = mu * r * r;
    let r2 = r * r;
    let accel = |u: f64, v: f64| -damp * v - r2 * u;
    let (mut u, mut v) = (u0, v0);
    emit(ModeState { u, v, t: 0.0 });
    for i in 1..=steps {
        let (k1u, k1v) = (v, accel(u, v));
        let (k2u, k2v) = (v + 0.5 * h * k1v, accel(u + 0.5 * h * k1u, v + 0.5 * h * k1v));
        let (k3u, k3v) = (v + 0.5 * h * k2v, accel(u + 0.5 * h * k2u, v + 0.5 * h * k2v));
        let (k4u, k4v) = (v + h * k3v, accel(u + h * k3u, v + h * k3v));
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if !(u.is_finite() && v.is_finite()) {
            return Err(Error::NonFiniteIntegrand { r });
        }
        emit(ModeState { u, v, t: i as f64 * h });
    }
    Ok(())
}

/// The per-mode energy, its modified version and the dissipation terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyFunctionals {
    /// `v^2 + r^2 u^2`.
    pub e0: f64,
    /// `e0 + 2 beta rho u v + beta rho mu r^2 u^2`.
    pub e: f64,
    /// `mu r^2 v^2 + beta rho r^2 u^2`.
    pub f: f64,
    /// `beta rho v^2`.
    pub rr: f64,
    pub beta: f64,
    pub rho: f64,
    /// `1 + beta^2 / 4`.
    pub m1: f64,
    /// `4 + 2 / beta`.
    pub m2: f64,
}

impl EnergyFunctionals {
    /// Exponential rate factor `2 (1 - beta) / (m1 + m2)`.
    pub fn rate_constant(&self) -> f64 {
        rate_constant(self.beta)
    }
}

pub fn rate_constant(beta: f64) -> f64 {
    2.0 * (1.0 - beta) / ((1.0 + beta * beta / 4.0) + (4.0 + 2.0 / beta))
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("beta must lie in (0, 1), got {beta}")))
    }
}

pub fn energy_functionals(state: ModeState, r: f64, sym: &SymbolSpec, beta: f64) -> Result<EnergyFunctionals> {
    check_beta(beta)?;
    Ok(functionals_with_mu(state, r, sym.eval(r)?, beta))
}

fn functionals_with_mu(state: ModeState, r: f64, mu: f64, beta: f64) -> EnergyFunctionals {
    let (u, v) = (state.u, state.v);
    let r2 = r * r;
    let rho = key_rho(mu, r);
    let br = beta * rho;
    let e0 = v * v + r2 * u * u;
    EnergyFunctionals {
        e0,
        e: e0 + 2.0 * br * u * v + br * mu * r2 * u * u,
        f: mu * r2 * v * v + br * r2 * u * u,
        rr: br * v * v,
        beta,
        rho,
        m1: 1.0 + beta * beta / 4.0,
        m2: 4.0 + 2.0 / beta,
    }
}

/// Outcome of the discrete Lyapunov checks along one trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub r: f64,
    pub beta: f64,
    /// Allowed violation: `1e-6 E(0)`.
    pub slack: f64,
    /// `max (E_{i+1} - E_i)/dt + 2 (1 - beta) F_mid`.
    pub max_dissipation_residual: f64,
    /// Largest violation of `(1 - beta) E0 <= E <= 3 E0`, relative to `E0`
    /// (0 when it holds).
    pub max_equivalence_violation: f64,
    /// `max E(t) - e^{-c rho t} E(0)`.
    pub max_gronwall_excess: f64,
    /// `max |dE0/dt + 2 mu r^2 v^2|` by finite differences, relative to the
    /// peak of `2 mu r^2 v^2` (0 for undamped modes).
    pub max_identity_residual: f64,
    pub steps: usize,
}

impl InequalityReport {
    pub fn dissipation_ok(&self) -> bool {
        self.max_dissipation_residual <= self.slack
    }
    pub fn equivalence_ok(&self) -> bool {
        self.max_equivalence_violation <= 1e-12
    }
    pub fn gronwall_ok(&self) -> bool {
        self.max_gronwall_excess <= self.slack
    }
    pub fn passed(&self) -> bool {
        self.dissipation_ok() && self.equivalence_ok() && self.gronwall_ok()
    }
}

/// Evaluates the dissipation inequality, the functional equivalence and the
/// integrated exponential bound along a trajectory from [`rk4_mode`].
pub fn check_dissipation_inequality(
    r: f64,
    sym: &SymbolSpec,
    beta: f64,
    trajectory: &[ModeState],
) -> Result<InequalityReport> {
    check_beta(beta)?;
    if trajectory.len() < 2 {
        return Err(Error::InvalidParameter("trajectory needs at least two states".into()));
    }
    let mu = sym.eval(r)?;
    let funcs: Vec<EnergyFunctionals> =
        trajectory.iter().map(|&s| functionals_with_mu(s, r, mu, beta)).collect();
    let e_init = funcs[0].e;
    let slack = 1e-6 * e_init;
    let c = rate_constant(beta);
    let damp = mu * r * r;

    let mut max_diss = f64::NEG_INFINITY;
    let mut max_ident = 0.0f64;
    let mut peak_loss = 0.0f64;
    for (i, w) in funcs.windows(2).enumerate() {
        let dt = trajectory[i + 1].t - trajectory[i].t;
        let f_mid = 0.5 * (w[0].f + w[1].f);
        max_diss = max_diss.max((w[1].e - w[0].e) / dt + 2.0 * (1.0 - beta) * f_mid);
        let v2_mid = 0.5 * (trajectory[i].v.powi(2) + trajectory[i + 1].v.powi(2));
        max_ident = max_ident.max(((w[1].e0 - w[0].e0) / dt + 2.0 * damp * v2_mid).abs());
        peak_loss = peak_loss.max(2.0 * damp * v2_mid);
    }
    if peak_loss > 0.0 {
        max_ident /= peak_loss;
    }
    let mut max_equiv = 0.0f64;
    let mut max_gron = f64::NEG_INFINITY;
    for (s, fe) in trajectory.iter().zip(&funcs) {
        let scale = fe.e0.max(f64::MIN_POSITIVE);
        let lo = ((1.0 - beta) * fe.e0 - fe.e) / scale;
        let hi = (fe.e - 3.0 * fe.e0) / scale;
        max_equiv = max_equiv.max(lo).max(hi);
        max_gron = max_gron.max(fe.e - (-c * fe.rho * s.t).exp() * e_init);
    }
    Ok(InequalityReport {
        r,
        beta,
        slack,
        max_dissipation_residual: max_diss,
        max_equivalence_violation: max_equiv,
        max_gronwall_excess: max_gron,
        max_identity_residual: max_ident,
        steps: trajectory.len() - 1,
    })
}

/// Sampling window and tolerance of the kernel cross-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCheckConfig {
    pub samples: usize,
    pub r_max: f64,
    pub t_max: f64,
    pub seed: u64,
    /// Pass iff `|rk4 - closed| <= rel_tol (1 + |closed|)`.
    pub rel_tol: f64,
    /// RK4 step as a fraction of [`step_guard`].
    pub step_fraction: f64,
}

impl Default for OracleCheckConfig {
    fn default() -> Self {
        OracleCheckConfig {
            samples: 50,
            r_max: 8.0,
            t_max: 10.0,
            seed: 0,
            rel_tol: 1e-6,
            step_fraction: 1.0 / 32.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSample {
    pub r: f64,
    pub t: f64,
    pub regime: Regime,
    pub k0: f64,
    pub k1: f64,
    pub rk4_k0: f64,
    pub rk4_k1: f64,
    /// `max |rk4 - closed| / (1 + |closed|)` over both kernels.
    pub error: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub symbol: String,
    pub samples: Vec<OracleSample>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.pass)
    }
    pub fn max_error(&self) -> f64 {
        self.samples.iter().map(|s| s.error).fold(0.0, f64::max)
    }
    pub fn has_confluent(&self) -> bool {
        self.samples.iter().any(|s| s.regime == Regime::Confluent)
    }
}

/// A radius in `(0, r_max]` where `mu(r) r = 2`, if a sign change of
/// `mu(r) r - 2` is visible on a fine grid.
pub fn find_confluent_radius(sym: &SymbolSpec, r_max: f64) -> Result<Option<f64>> {
    let f = |r: f64| -> Result<f64> { Ok(sym.eval(r)? * r - 2.0) };
    let grid = 4000;
    let mut prev_r = r_max / grid as f64;
    let mut prev = f(prev_r)?;
    for i in 2..=grid {
        let r = r_max * i as f64 / grid as f64;
        let v = f(r)?;
        if prev == 0.0 {
            return Ok(Some(prev_r));
        }
        if prev.signum() != v.signum() {
            let (mut lo, mut hi, flo) = (prev_r, r, prev);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if f(mid)?.signum() == flo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(Some(0.5 * (lo + hi)));
        }
        prev_r = r;
        prev = v;
    }
    Ok(None)
}

fn oracle_sample(sym: &SymbolSpec, r: f64, t: f64, cfg: &OracleCheckConfig) -> Result<OracleSample> {
    let mu = sym.eval(r)?;
    let k = kernels_with_mu(t, r, mu);
    let dt = step_guard(r, mu) * cfg.step_fraction;
    let a = rk4_endpoint(r, sym, 1.0, 0.0, t, dt)?;
    let b = rk4_endpoint(r, sym, 0.0, 1.0, t, dt)?;
    let error = ((a.u - k.k0).abs() / (1.0 + k.k0.abs())).max((b.u - k.k1).abs() / (1.0 + k.k1.abs()));
    Ok(OracleSample {
        r,
        t,
        regime: k.regime,
        k0: k.k0,
        k1: k.k1,
        rk4_k0: a.u,
        rk4_k1: b.u,
        error,
        pass: error <= cfg.rel_tol,
    })
}

/// Compares closed-form kernels with RK4 at seeded random `(r, t)` plus a
/// confluent point when one exists in `(0, r_max]`.
pub fn kernel_oracle_check(sym: &SymbolSpec, cfg: &OracleCheckConfig) -> Result<OracleReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut points: Vec<(f64, f64)> = (0..cfg.samples)
        .map(|_| (rng.random_range(0.0..=cfg.r_max), rng.random_range(0.0..=cfg.t_max)))
        .collect();
    if let Some(rc) = find_confluent_radius(sym, cfg.r_max)? {
        points.push((rc, rng.random_range(0.0..=cfg.t_max)));
    }
    let samples = points
        .par_iter()
        .map(|&(r, t)| oracle_sample(sym, r, t, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleReport { symbol: sym.label(), samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::kernels;
    use approx::assert_relative_eq;

    #[test]
    fn free_mode_is_linear() {
        let one = SymbolSpec::constant_one();
        let traj = rk4_mode(0.0, &one, 1.0, 2.0, 3.0, 0.01).unwrap();
        assert_relative_eq!(traj.last().unwrap().u, 7.0, max_relative = 1e-13);
        assert_relative_eq!(traj.last().unwrap().t, 3.0, max_relative = 1e-15);
    }

    #[test]
    fn matches_closed_form_kernels() {
        let one = SymbolSpec::constant_one();
        let end = rk4_endpoint(1.0, &one, 1.0, 0.0, 1.0, 1e-3).unwrap();
        let k = kernels(1.0, 1.0, &one).unwrap();
        assert!((end.u - k.k0).abs() < 1e-8);

        let two = SymbolSpec::custom("two", |_| 2.0);
        let end = rk4_endpoint(1.0, &two, 0.0, 1.0, 1.0, 1e-3).unwrap();
        assert!((end.u - (-1f64).exp()).abs() < 1e-8);
    }

    #[test]
    fn guard_and_budget() {
        let one = SymbolSpec::constant_one();
        assert!(matches!(rk4_mode(1.0, &one, 1.0, 0.0, 1.0, 0.5), Err(Error::InvalidParameter(_))));
        assert!(matches!(rk4_endpoint(0.0, &one, 1.0, 0.0, 1e9, 1e-2), Err(Error::OracleBudget { .. })));
    }

    #[test]
    fn functional_examples() {
        let one = SymbolSpec::constant_one();
        let zero = ModeState { u: 0.0, v: 0.0, t: 0.0 };
        let f = energy_functionals(zero, 1.0, &one, 0.5).unwrap();
        assert_eq!((f.e0, f.e, f.f, f.rr), (0.0, 0.0, 0.0, 0.0));
        let s = ModeState { u: 1.0, v: 0.0, t: 0.0 };
        let f = energy_functionals(s, 1.0, &one, 0.5).unwrap();
        assert_eq!(f.e0, 1.0);
        assert_relative_eq!(f.e, 1.25, max_relative = 1e-15);
        assert_relative_eq!(f.rate_constant(), 1.0 / 9.0625, max_relative = 1e-15);
        assert!(energy_functionals(s, 1.0, &one, 1.0).is_err());
    }

    #[test]
    fn dissipation_checks_pass() {
        for sym in crate::symbols::builtin_catalog() {
            for r in [0.1, 1.0, 4.0] {
                let mu = sym.eval(r).unwrap();
                let dt = step_guard(r, mu) / 32.0;
                let traj = rk4_mode(r, &sym, 1.0, 0.5, 20.0, dt).unwrap();
                let rep = check_dissipation_inequality(r, &sym, 0.5, &traj).unwrap();
                assert!(rep.passed(), "{} r={r}: {rep:?}", sym.label());
                assert!(rep.max_identity_residual <= 1e-3, "{} r={r}: {rep:?}", sym.label());
            }
        }
    }

    #[test]
    fn oracle_check_catalog() {
        let cfg = OracleCheckConfig { samples: 8, ..Default::default() };
        for sym in crate::symbols::builtin_catalog() {
            let rep = kernel_oracle_check(&sym, &cfg).unwrap();
            assert!(rep.passed(), "{}: {}", sym.label(), rep.max_error());
        }
        let rep = kernel_oracle_check(&SymbolSpec::constant_one(), &cfg).unwrap();
        assert!(rep.has_confluent());
        assert!(find_confluent_radius(&SymbolSpec::parse("hypC-log").unwrap(), 8.0).unwrap().is_none());
    }

    #[test]
    fn zero_frequency_is_trivial() {
        let one = SymbolSpec::constant_one();
        let traj = rk4_mode(0.0, &one, 1.0, 1.0, 2.0, 0.01).unwrap();
        let rep = check_dissipation_inequality(0.0, &one, 0.5, &traj).unwrap();
        assert!(rep.max_dissipation_residual <= 1e-12);
    }

    #[test]
    fn energy_is_non_increasing() {
        let sym = SymbolSpec::power_law(1.0).unwrap();
        let traj = rk4_mode(2.0, &sym, 1.0, -1.0, 5.0, 1e-3).unwrap();
        let e0: Vec<f64> = traj.iter().map(|s| s.v * s.v + 4.0 * s.u * s.u).collect();
        assert!(e0.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    }

    proptest::proptest! {
        #[test]
        fn functional_equivalence(u in -10.0f64..10.0, v in -10.0f64..10.0, r in 0.0f64..50.0, mu in 0.0f64..50.0, beta in 0.01f64..0.99) {
            let f = functionals_with_mu(ModeState { u, v, t: 0.0 }, r, mu, beta);
            let tol = 1e-12 * f.e0;
            proptest::prop_assert!((1.0 - beta) * f.e0 <= f.e + tol);
            proptest::prop_assert!(f.e <= 3.0 * f.e0 + tol);
        }
    }
}

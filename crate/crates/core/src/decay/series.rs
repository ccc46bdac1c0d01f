//! Zone-restricted norm series of the solution and its profile residual.

use rayon::prelude::*;

use crate::decay::fit::SeriesPoint;
use crate::error::{Error, Result};
use crate::quadrature::{radial_l2, NormRequest, RadialProfile};
use crate::spectral::{kernels_with_mu, zone_of, Zone, ZonePartition, ZoneSelect};
use crate::symbols::{classify_trend, SymbolSpec, Trend};

/// Default truncation radius for exterior norms.
pub const SERIES_R_CAP: f64 = 1_099_511_627_776.0; // 2^40

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// `|u|^2`.
    SolutionItself,
    /// `r^2 |u|^2`.
    EnergyGrad,
    /// `|u_t|^2`.
    EnergyTime,
    /// `|u - v_int - v_ext|^2`, with `v_ext` present only for symbols whose
    /// large-frequency limit is infinite.
    ProfileResidual,
}

impl Quantity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Quantity::SolutionItself => "solution",
            Quantity::EnergyGrad => "energy-grad",
            Quantity::EnergyTime => "energy-time",
            Quantity::ProfileResidual => "profile-residual",
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "solution" => Ok(Quantity::SolutionItself),
            "energy-grad" => Ok(Quantity::EnergyGrad),
            "energy-time" => Ok(Quantity::EnergyTime),
            "profile-residual" => Ok(Quantity::ProfileResidual),
            _ => Err(Error::InvalidParameter(format!(
                "unknown quantity `{s}`; supported: solution, energy-grad, energy-time, profile-residual"
            ))),
        }
    }
}

/// A linear Cauchy problem in Fourier variables.
#[derive(Debug, Clone)]
pub struct ProblemSetup {
    pub sym: SymbolSpec,
    pub n: u32,
    pub u0hat: RadialProfile,
    pub u1hat: RadialProfile,
    pub zp: ZonePartition,
    pub s: f64,
    pub ell0: f64,
    pub ell1: f64,
    /// Truncation radius for exterior norms.
    pub r_cap: f64,
}

impl ProblemSetup {
    pub fn new(sym: SymbolSpec, n: u32, u0hat: RadialProfile, u1hat: RadialProfile) -> Self {
        ProblemSetup {
            sym,
            n,
            u0hat,
            u1hat,
            zp: ZonePartition::default(),
            s: 0.0,
            ell0: 0.0,
            ell1: 0.0,
            r_cap: SERIES_R_CAP,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("dimension n must be at least 1".into()));
        }
        if !(self.ell0 >= 0.0 && self.ell1 >= 0.0) {
            return Err(Error::InvalidParameter("ell0 and ell1 must be non-negative".into()));
        }
        ZonePartition::new(self.zp.eps, self.zp.big_n)?;
        Ok(())
    }
}

/// `count` geometrically spaced times in `[t_min, t_max]`.
pub fn geometric_times(t_min: f64, t_max: f64, count: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_max > t_min && t_max.is_finite()) || count < 2 {
        return Err(Error::InvalidParameter(format!(
            "time grid needs 0 < t_min < t_max and count >= 2; got [{t_min}, {t_max}] x {count}"
        )));
    }
    let ratio = (t_max / t_min).ln();
    Ok((0..count)
        .map(|i| {
            if i + 1 == count {
                t_max
            } else {
                t_min * (ratio * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect())
}

/// The zone-restricted norm of `quantity` at time `t`.
pub fn norm_at(p: &ProblemSetup, quantity: Quantity, zone: ZoneSelect, t: f64) -> Result<f64> {
    p.validate()?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("time {t} must be finite and non-negative")));
    }
    let subtract_ext = p.sym.has_regularity_loss();
    let integrand = |r: f64| -> Result<f64> {
        let mu = p.sym.eval(r)?;
        let k = kernels_with_mu(t, r, mu);
        let a = p.u0hat.eval(r);
        let b = p.u1hat.eval(r);
        // zero data must not meet k1 = t growth or a singular g1
        let comb = |x: f64, y: f64| {
            let mut v = 0.0;
            if a != 0.0 {
                v += x * a;
            }
            if b != 0.0 {
                v += y * b;
            }
            v
        };
        let u = comb(k.k0, k.k1);
        Ok(match quantity {
            Quantity::SolutionItself => u * u,
            Quantity::EnergyGrad => r * r * u * u,
            Quantity::EnergyTime => {
                let ut = comb(k.dk0, k.dk1);
                ut * ut
            }
            Quantity::ProfileResidual => {
                let profile = match zone_of(r, &p.zp) {
                    Zone::Interior => comb(k.h0, k.h1),
                    Zone::Exterior if subtract_ext => {
                        let g1 = if b != 0.0 { k.g1()? } else { 0.0 };
                        comb(k.g0, g1)
                    }
                    _ => 0.0,
                };
                let d = u - profile;
                d * d
            }
        })
    };
    let mut req = NormRequest::new(&integrand, p.n, zone);
    req.zp = p.zp;
    req.t_hint = t;
    req.r_cap = p.r_cap;
    radial_l2(&req)
}

/// Norms at every requested time, computed in parallel and returned in order.
pub fn norm_series(p: &ProblemSetup, quantity: Quantity, zone: ZoneSelect, times: &[f64]) -> Result<Vec<SeriesPoint>> {
    if quantity == Quantity::ProfileResidual && p.n <= 2 {
        check_small_frequency_growth(&p.sym)?;
    }
    times
        .par_iter()
        .map(|&t| norm_at(p, quantity, zone, t).map(|norm| SeriesPoint { t, norm }))
        .collect()
}

/// Requires `mu(r) r^{1/2 - delta}` to stay bounded as `r -> 0`, the extra
/// small-frequency condition needed for profile estimates in `n <= 2`.
pub fn check_small_frequency_growth(sym: &SymbolSpec) -> Result<()> {
    let values: Vec<f64> = (1..=40)
        .map(|k| {
            let r = 2f64.powi(-k);
            sym.eval(r).map(|mu| mu * r.powf(0.49))
        })
        .collect::<Result<_>>()?;
    match classify_trend(&values, 10).0 {
        Trend::Infinite => Err(Error::InvalidParameter(format!(
            "symbol `{}` grows faster than r^(-1/2) near the origin; profile estimates need n >= 3",
            sym.label()
        ))),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decay::fit::fit_decay;
    use approx::assert_relative_eq;

    fn gaussian_u0(sym: SymbolSpec, n: u32) -> ProblemSetup {
        ProblemSetup::new(sym, n, RadialProfile::gaussian(1.0), RadialProfile::zero())
    }

    #[test]
    fn time_grid() {
        let g = geometric_times(1.0, 1e4, 33).unwrap();
        assert_eq!(g.len(), 33);
        assert_eq!(g[0], 1.0);
        assert_eq!(g[32], 1e4);
        assert_relative_eq!(g[8], 10.0, max_relative = 1e-12);
        assert!(geometric_times(0.0, 1.0, 4).is_err());
    }

    #[test]
    fn initial_norm_equals_data_norm() {
        for sym in crate::symbols::builtin_catalog() {
            let p = gaussian_u0(sym.clone(), 3);
            let at0 = norm_at(&p, Quantity::SolutionItself, ZoneSelect::All, 0.0).unwrap();
            // int_0^inf e^{-2r^2} r^2 dr = sqrt(pi/2) / 8
            let exact = ((std::f64::consts::PI / 2.0).sqrt() / 8.0).sqrt();
            assert_relative_eq!(at0, exact, max_relative = 1e-9);
        }
    }

    #[test]
    fn t_one_matches_kernel_norm() {
        let p = gaussian_u0(SymbolSpec::constant_one(), 3);
        let got = norm_at(&p, Quantity::SolutionItself, ZoneSelect::All, 1.0).unwrap();
        let f = |r: f64| {
            let k = crate::spectral::kernels_with_mu(1.0, r, 1.0);
            Ok((k.k0 * (-r * r).exp()).powi(2))
        };
        let mut req = NormRequest::new(&f, 3, ZoneSelect::All);
        req.r_cap = SERIES_R_CAP;
        assert_relative_eq!(got, radial_l2(&req).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn total_energy_is_non_increasing() {
        for sym in crate::symbols::builtin_catalog() {
            let p = ProblemSetup::new(sym.clone(), 3, RadialProfile::gaussian(1.0), RadialProfile::gaussian(2.0));
            let energy = |t: f64| {
                let a = norm_at(&p, Quantity::EnergyTime, ZoneSelect::All, t).unwrap();
                let b = norm_at(&p, Quantity::EnergyGrad, ZoneSelect::All, t).unwrap();
                a * a + b * b
            };
            let e0 = energy(0.0);
            for t in [0.5, 3.0, 30.0] {
                assert!(energy(t) <= e0 * (1.0 + 1e-9), "{} at t = {t}", sym.label());
            }
        }
    }

    #[test]
    fn low_dimension_u1_series_stays_finite() {
        let times = [0.0, 1.0, 10.0, 100.0, 1e3, 1e4];
        for n in [1u32, 2] {
            let p = ProblemSetup::new(SymbolSpec::constant_one(), n, RadialProfile::zero(), RadialProfile::gaussian(1.0));
            let s = norm_series(&p, Quantity::SolutionItself, ZoneSelect::Interior, &times).unwrap();
            assert!(s.iter().all(|x| x.norm.is_finite()));
        }
    }

    #[test]
    fn residual_below_solution_for_regularity_loss() {
        for spec in ["power-law:beta=1", "logarithmic:gamma=1"] {
            let sym = SymbolSpec::parse(spec).unwrap();
            let p = ProblemSetup::new(sym, 3, RadialProfile::gaussian(1.0), RadialProfile::gaussian(1.0));
            for t in [100.0, 1000.0] {
                let sol = norm_at(&p, Quantity::SolutionItself, ZoneSelect::All, t).unwrap();
                let res = norm_at(&p, Quantity::ProfileResidual, ZoneSelect::All, t).unwrap();
                assert!(res <= sol, "{spec} t={t}: {res} > {sol}");
            }
        }
    }

    #[test]
    fn heat_rate_for_constant_symbol() {
        let p = gaussian_u0(SymbolSpec::constant_one(), 3);
        let times = geometric_times(1.0, 1e4, 33).unwrap();
        let s = norm_series(&p, Quantity::SolutionItself, ZoneSelect::Interior, &times).unwrap();
        let fit = fit_decay(&s).unwrap();
        assert!((fit.slope + 0.75).abs() < 0.05, "{}", fit.slope);
    }

    #[test]
    fn small_frequency_growth_check() {
        assert!(check_small_frequency_growth(&SymbolSpec::power_law(-0.4).unwrap()).is_ok());
        assert!(check_small_frequency_growth(&SymbolSpec::power_law(-0.9).unwrap()).is_err());
    }
}

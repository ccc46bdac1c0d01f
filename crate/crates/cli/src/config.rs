//! Run settings: config file (`key = value`, optional `[section.NAME]`
//! tables) overlaid by command-line flags, then validated up front.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::Args;
use serde::Deserialize;

use dampwave::decay::{geometric_times, Quantity, TimeGrid};
use dampwave::{RadialProfile, SymbolSpec, ZonePartition, ZoneSelect};

/// Marks an error as a configuration problem (exit code 2).
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_err(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(ConfigError(msg.into()))
}

/// Every tunable value; flags and file keys share names (`big-n`, `t-min`, ...).
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    /// Damping symbol, e.g. `power-law:beta=1`
    #[arg(long)]
    pub symbol: Option<String>,
    /// Space dimension
    #[arg(long)]
    pub n: Option<u32>,
    /// Sobolev order of the norm
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<f64>,
    /// Symbol weight exponent on u0
    #[arg(long)]
    pub ell0: Option<f64>,
    /// Symbol weight exponent on u1
    #[arg(long)]
    pub ell1: Option<f64>,
    /// Fourier profile of u0: gaussian[:scale=], algebraic:a=, constant:value=, zero
    #[arg(long)]
    pub u0: Option<String>,
    /// Fourier profile of u1
    #[arg(long)]
    pub u1: Option<String>,
    /// Interior zone radius
    #[arg(long)]
    pub eps: Option<f64>,
    /// Exterior zone radius
    #[arg(long)]
    pub big_n: Option<f64>,
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of geometric time points
    #[arg(long)]
    pub count: Option<usize>,
    /// solution | energy-grad | energy-time | profile-residual
    #[arg(long)]
    pub quantity: Option<String>,
    /// interior | bounded | exterior | all
    #[arg(long)]
    pub zone: Option<String>,
    /// Expected fitted slope for decay-fit
    #[arg(long, allow_hyphen_values = true)]
    pub expect_slope: Option<f64>,
    /// Tolerance on the expected slope
    #[arg(long)]
    pub tol: Option<f64>,
    /// Oracle sample count
    #[arg(long)]
    pub samples: Option<usize>,
    /// Seed for oracle sample points
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Scenario names to run (file key only)
    #[arg(skip)]
    pub scenarios: Option<Vec<String>>,
}

macro_rules! overlay {
    ($dst:ident, $src:ident, $($f:ident),*) => {
        $( if $src.$f.is_some() { $dst.$f = $src.$f.clone(); } )*
    };
}

impl Settings {
    /// Fields set in `top` win.
    pub fn overlay(&mut self, top: &Settings) {
        overlay!(
            self, top, symbol, n, s, ell0, ell1, u0, u1, eps, big_n, t_min, t_max, count, quantity, zone, expect_slope,
            tol, samples, seed, output, scenarios
        );
    }

    pub fn load(path: &Path, section: Option<&str>) -> anyhow::Result<Settings> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))
            .map_err(|e| config_err(format!("{e:#}")))?;
        Self::from_toml(&text, section).map_err(|e| config_err(format!("{}: {e:#}", path.display())))
    }

    pub fn from_toml(text: &str, section: Option<&str>) -> anyhow::Result<Settings> {
        let mut table: toml::Table = text.parse()?;
        let sections = match table.remove("section") {
            Some(toml::Value::Table(t)) => t,
            Some(_) => bail!("`section` must be a table of named tables"),
            None => toml::Table::new(),
        };
        let mut base = Settings::deserialize(toml::Value::Table(table))?;
        if let Some(name) = section {
            let sec = sections.get(name).ok_or_else(|| {
                let known: Vec<&str> = sections.keys().map(String::as_str).collect();
                anyhow!("no section `{name}`; available: {}", known.join(", "))
            })?;
            let over = Settings::deserialize(sec.clone()).with_context(|| format!("section `{name}`"))?;
            base.overlay(&over);
        }
        Ok(base)
    }

    pub fn symbol(&self) -> anyhow::Result<SymbolSpec> {
        let spec = self.symbol.as_deref().ok_or_else(|| config_err("--symbol is required"))?;
        SymbolSpec::parse(spec).map_err(|e| config_err(e.to_string()))
    }

    pub fn n(&self) -> anyhow::Result<u32> {
        match self.n.unwrap_or(3) {
            0 => Err(config_err("n must be a positive integer")),
            n => Ok(n),
        }
    }

    pub fn s(&self) -> anyhow::Result<f64> {
        finite("s", self.s.unwrap_or(0.0))
    }

    pub fn ell(&self) -> anyhow::Result<(f64, f64)> {
        let (a, b) = (self.ell0.unwrap_or(0.0), self.ell1.unwrap_or(0.0));
        if !(a >= 0.0 && b >= 0.0 && a.is_finite() && b.is_finite()) {
            return Err(config_err("ell0 and ell1 must be finite and non-negative"));
        }
        Ok((a, b))
    }

    pub fn data(&self) -> anyhow::Result<(RadialProfile, RadialProfile)> {
        let parse = |s: &str| RadialProfile::parse(s).map_err(|e| config_err(e.to_string()));
        Ok((parse(self.u0.as_deref().unwrap_or("gaussian"))?, parse(self.u1.as_deref().unwrap_or("zero"))?))
    }

    pub fn zones(&self) -> anyhow::Result<ZonePartition> {
        let d = ZonePartition::default();
        ZonePartition::new(self.eps.unwrap_or(d.eps), self.big_n.unwrap_or(d.big_n)).map_err(|e| config_err(e.to_string()))
    }

    pub fn times(&self) -> anyhow::Result<Vec<f64>> {
        let d = TimeGrid::DEFAULT;
        geometric_times(self.t_min.unwrap_or(d.t_min), self.t_max.unwrap_or(d.t_max), self.count.unwrap_or(d.count))
            .map_err(|e| config_err(e.to_string()))
    }

    pub fn quantity(&self) -> anyhow::Result<Quantity> {
        self.quantity.as_deref().unwrap_or("solution").parse().map_err(|e: dampwave::Error| config_err(e.to_string()))
    }

    pub fn zone(&self) -> anyhow::Result<ZoneSelect> {
        self.zone.as_deref().unwrap_or("interior").parse().map_err(|e: dampwave::Error| config_err(e.to_string()))
    }

    pub fn tol(&self, default: f64) -> anyhow::Result<f64> {
        let t = self.tol.unwrap_or(default);
        if !(t > 0.0 && t.is_finite()) {
            return Err(config_err("tol must be positive"));
        }
        Ok(t)
    }

    pub fn samples(&self) -> anyhow::Result<usize> {
        match self.samples.unwrap_or(50) {
            0 => Err(config_err("samples must be at least 1")),
            k => Ok(k),
        }
    }
}

fn finite(name: &str, v: f64) -> anyhow::Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(config_err(format!("{name} must be finite")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn section_overrides_base() {
        let text = "symbol = \"power-law:beta=1\"\nn = 3\n[section.low]\nn = 1\nt-min = 10.0\n";
        let s = Settings::from_toml(text, Some("low")).unwrap();
        assert_eq!(s.n, Some(1));
        assert_eq!(s.t_min, Some(10.0));
        assert_eq!(s.symbol.as_deref(), Some("power-law:beta=1"));
        assert!(Settings::from_toml(text, Some("missing")).is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(Settings::from_toml("symbl = \"x\"\n", None).is_err());
    }

    #[test]
    fn flags_win() {
        let mut base = Settings::from_toml("n = 2\ns = 1.0\n", None).unwrap();
        base.overlay(&Settings { n: Some(5), ..Default::default() });
        assert_eq!((base.n, base.s), (Some(5), Some(1.0)));
    }
}

//! Fourier-space solution theory for the wave equation with a general
//! strong damping `u_tt - Δu - μ(|D|)Δu_t = 0`, together with the numerical
//! machinery used to measure its decay rates.
//!
//! * [`symbols`] — damping symbols `μ(r)` and limit classification.
//! * [`spectral`] — characteristic roots, solution kernels and profile multipliers.
//! * [`oracle`] — RK4 reference integrator and per-mode energy checks.
//! * [`quadrature`] — radial `L²` norms over frequency zones.
//! * [`decay`] — exponent estimation, norm series, slope fits and canned scenarios.

pub mod decay;
pub mod error;
pub mod oracle;
pub mod quadrature;
pub mod spectral;
pub mod symbols;

pub use error::{Error, Result};
pub use quadrature::{radial_l2, NormRequest, RadialProfile};
pub use spectral::{char_roots, kernels, CharRoots, KernelValue, Regime, Zone, ZonePartition, ZoneSelect};
pub use symbols::{builtin_catalog, check_hypotheses, HypothesisReport, ProbeConfig, SymbolSpec};

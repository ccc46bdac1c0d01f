//! Decay-rate experiments: admissible interior exponents, norm series,
//! slope fits, the exterior regularity-loss probe and the canned scenarios.

pub mod alpha;
pub mod fit;
pub mod loss;
pub mod report;
pub mod scenarios;
pub mod series;

pub use alpha::{alpha_sup, AlphaQuery, AlphaResult};
pub use fit::{fit_decay, fit_decay_window, DecayClass, DecayFit, SeriesPoint};
pub use loss::{borderline_tail_exponent, regularity_loss_probe, LossReport};
pub use scenarios::{find_scenario, run_scenario, run_suite, theorem_scenarios, Check, ScenarioKind, ScenarioOutcome, ScenarioSpec, TimeGrid};
pub use series::{geometric_times, norm_at, norm_series, ProblemSetup, Quantity};

//! Simulation engine for a proliferation-versus-detection technology race.
//!
//! A proliferator's enabling-technology capability `P(t)` grows along a
//! logistic curve while detection capability `D(t)` improves in discrete
//! upgrades. Their gap, the Relative Advantage Index, drives both the
//! probability that a breakout attempt is detected and the rate at which
//! attempts occur. Integrating the undetected-attempt intensity gives the
//! expected number of undetected breakouts over the horizon.
//!
//! Modules:
//!
//! - [`model`]: pointwise curves, cumulative risk, crossing times, bounds,
//!   sampled trajectories.
//! - [`scenario`]: the twelve shipped presets, scenario tables and the
//!   limited-growth walk-through.
//! - [`sensitivity`]: one-at-a-time sweeps, elasticities, detection-curve
//!   families and uncertainty bands.
//! - [`montecarlo`]: thinning simulation of the attempt process, used as an
//!   independent check on the analytic risk.
//! - [`service`]: JSON-over-HTTP evaluation API.
//! - [`cli`]: the `techrace` command line.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod model;
pub mod montecarlo;
pub mod output;
pub mod quadrature;
pub mod scenario;
pub mod sensitivity;
pub mod service;

pub use error::{Error, Result};
pub use model::ModelParams;

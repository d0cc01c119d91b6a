//! Cumulative breakout risk and its closed-form bounds.

use serde::{Deserialize, Serialize};

use super::curves::{evasion_prob, hazard_rate, logistic, pet_capability};
use super::params::ModelParams;
use crate::error::{Error, Result};
use crate::quadrature;

/// Absolute tolerance for the full-horizon risk integral.
pub const RISK_ABS_TOL: f64 = 1e-10;

/// Undetected-attempt intensity `λ(RAI)·(1 − Pr(D))` for a given RAI and
/// detection slope.
pub fn undetected_intensity(rai: f64, kappa: f64, params: &ModelParams) -> f64 {
    hazard_rate(rai, params.lambda0, params.eta, params.beta, params.tau)
        * evasion_prob(rai, kappa, params.theta, params.pi0)
}

/// Integrates `λ(RAI(t))·(1 − Pr(D_t))` over `[a, b]` for an arbitrary RAI
/// path. `breaks` are points where the path or slope may jump; every
/// sub-interval between them is integrated separately.
pub fn integrate_risk<F>(params: &ModelParams, rai_path: F, a: f64, b: f64, breaks: &[f64], abs_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut pts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&x| x > a && x < b))
        .chain(std::iter::once(b))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let share = abs_tol / (pts.len().max(2) - 1) as f64;
    let mut total = 0.0;
    for w in pts.windows(2) {
        let f = |t: f64| undetected_intensity(rai_path(t), params.kappa_at(t), params);
        total += quadrature::integrate(f, w[0], w[1], share)?.value;
    }
    if !total.is_finite() {
        return Err(Error::ComputeFault("risk integral is not finite".into()));
    }
    Ok(total)
}

/// Risk accumulated on `[a, b]` along the model's own RAI path, optionally
/// shifted by a constant number of capability points.
pub fn risk_between(params: &ModelParams, a: f64, b: f64, rai_shift: f64, abs_tol: f64) -> Result<f64> {
    let rai = |t: f64| pet_capability(t, params) - params.det_schedule.capability_at(t) + rai_shift;
    integrate_risk(params, rai, a, b, &params.breakpoints(), abs_tol)
}

/// Expected number of undetected breakout attempts over `[0, horizon]`.
pub fn cumulative_risk(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    risk_between(params, 0.0, params.horizon, 0.0, RISK_ABS_TOL)
}

/// [`cumulative_risk`] with `RAI(t)` replaced by `RAI(t) + shift` in both
/// the detection and hazard terms.
pub fn cumulative_risk_shifted(params: &ModelParams, shift: f64) -> Result<f64> {
    params.validate()?;
    if !shift.is_finite() {
        return Err(Error::Domain(format!("RAI shift must be finite, got {shift}")));
    }
    risk_between(params, 0.0, params.horizon, shift, RISK_ABS_TOL)
}

/// Running risk `R(t_i)` at each of the (non-decreasing) `times`.
pub fn cumulative_risk_series(params: &ModelParams, times: &[f64]) -> Result<Vec<f64>> {
    params.validate()?;
    let mut out = Vec::with_capacity(times.len());
    let mut acc = 0.0;
    let mut prev = 0.0;
    for &t in times {
        if t < prev {
            return Err(Error::Domain("sample times must be non-decreasing".into()));
        }
        if t > prev {
            acc += risk_between(params, prev, t, 0.0, 1e-13)?;
            prev = t;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Probability of at least one undetected attempt, `1 − e^{−r}`.
pub fn breakout_prob(r: f64) -> Result<f64> {
    if r.is_nan() || r < 0.0 {
        return Err(Error::Domain(format!("expected count must be >= 0, got {r}")));
    }
    Ok(-(-r).exp_m1())
}

/// Two-sided bound on `R(T)` valid when `RAI(t) >= τ + δ` throughout and
/// `θ >= 0`. A negative `θ` shifts detection right and the lower bound no
/// longer holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundEstimate {
    pub lower: f64,
    pub upper: f64,
    /// Sigmoid slack `e^{−βδ}/(1 + e^{−βδ})`.
    pub epsilon: f64,
    /// Detection slack `(1 − π0)·e^{−κ(τ+δ)}`.
    pub zeta: f64,
}

pub fn risk_bounds(params: &ModelParams, delta: f64) -> Result<BoundEstimate> {
    params.validate()?;
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("delta must be > 0, got {delta}")));
    }
    let epsilon = logistic(-params.beta * delta);
    let zeta = ((1.0 - params.pi0) * (-params.kappa * (params.tau + delta)).exp()).min(1.0);
    let t = params.horizon;
    let upper = params.lambda0 * (1.0 + params.eta) * (1.0 - params.pi0) * t;
    let lower = (params.lambda0 * (1.0 + params.eta * (1.0 - epsilon)) * (1.0 - params.pi0 - zeta) * t).max(0.0);
    Ok(BoundEstimate { lower, upper, epsilon, zeta })
}

//! The technology-race model: PET and DET capability paths, the Relative
//! Advantage Index (RAI), detection probability, opportunistic hazard and
//! cumulative breakout risk.
//!
//! Every function here is a pure function of its inputs.

mod crossing;
mod curves;
mod params;
mod risk;
mod trajectory;

pub use crossing::{crossing_times, CrossingReport};
pub use curves::{
    det_capability, detection_prob, doubling_time, evasion_prob, hazard_rate, logistic, pet_capability, rai,
};
pub use params::{
    DetSchedule, DetStep, EarlyKappa, ModelParams, WireParams, DISRUPTIVE_GROWTH, LIMITED_GROWTH,
    TRANSFORMATIVE_GROWTH, TRANSFORMATIVE_GROWTH_PRECISE,
};
pub use risk::{
    breakout_prob, cumulative_risk, cumulative_risk_series, cumulative_risk_shifted, integrate_risk, risk_between,
    risk_bounds, undetected_intensity, BoundEstimate, RISK_ABS_TOL,
};
pub use trajectory::{sample_trajectory, Trajectory};

/// Peak hazard over `[0, horizon]`.
///
/// Hazard is non-decreasing in RAI, PET rises monotonically and DET only
/// jumps up, so the peak sits at the end of some constant-DET segment.
pub fn peak_hazard(params: &ModelParams) -> f64 {
    let horizon = params.horizon;
    let mut ends: Vec<f64> = params.det_schedule.step_times().filter(|&t| t > 0.0 && t <= horizon).collect();
    ends.push(horizon);
    ends.into_iter()
        .map(|t| {
            let r = pet_capability(t, params) - params.det_schedule.capability_before(t);
            let r_at = pet_capability(t, params) - params.det_schedule.capability_at(t);
            hazard_rate(r.max(r_at), params.lambda0, params.eta, params.beta, params.tau)
        })
        .fold(0.0, f64::max)
}

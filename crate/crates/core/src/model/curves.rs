//! Pointwise model curves: PET capability, RAI, detection and hazard.

use super::params::ModelParams;

/// Standard logistic `1 / (1 + e^{-x})`, evaluated on the branch that
/// cannot overflow.
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Logistic PET capability `P(t)`.
pub fn pet_capability(t: f64, params: &ModelParams) -> f64 {
    logistic_growth(t, params.p0, params.p_max, params.g_p)
}

pub(crate) fn logistic_growth(t: f64, p0: f64, p_max: f64, g_p: f64) -> f64 {
    p_max / (1.0 + (p_max / p0 - 1.0) * (-g_p * t).exp())
}

/// Stepwise DET capability `D(t)` (right-continuous).
pub fn det_capability(t: f64, params: &ModelParams) -> f64 {
    params.det_schedule.capability_at(t)
}

/// Relative Advantage Index `P(t) - D(t)`.
pub fn rai(t: f64, params: &ModelParams) -> f64 {
    pet_capability(t, params) - det_capability(t, params)
}

/// Probability that an attempt is detected when the proliferator is
/// `rai` points ahead. Decreasing in `rai`, bounded below by `pi0`.
pub fn detection_prob(rai: f64, kappa: f64, theta: f64, pi0: f64) -> f64 {
    pi0 + (1.0 - pi0) * logistic(-(kappa * rai + theta))
}

/// `1 - detection_prob`, computed without cancellation when detection is
/// near certain.
pub fn evasion_prob(rai: f64, kappa: f64, theta: f64, pi0: f64) -> f64 {
    (1.0 - pi0) * logistic(kappa * rai + theta)
}

/// Breakout hazard with the opportunism boost: `λ0·(1 + η·σ(β(rai − τ)))`.
pub fn hazard_rate(rai: f64, lambda0: f64, eta: f64, beta: f64, tau: f64) -> f64 {
    lambda0 * (1.0 + eta * logistic(beta * (rai - tau)))
}

/// PET doubling time in years during the near-exponential phase.
pub fn doubling_time(g_p: f64) -> f64 {
    std::f64::consts::LN_2 / g_p
}

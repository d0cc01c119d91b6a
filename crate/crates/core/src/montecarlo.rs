//! Monte Carlo simulation of breakout attempts.
//!
//! Attempts follow a non-homogeneous Poisson process with intensity
//! `λ(RAI(t))`, generated by thinning a homogeneous process at `max_rate`.
//! Each accepted attempt is then detected with probability `Pr(D_t)`. The
//! number of undetected attempts per trial is Poisson with mean `R(T)`, which
//! makes this an independent check on the quadrature.
//!
//! Trial `i` draws from ChaCha8 stream `i` of the configured seed, so results
//! do not depend on how trials are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{breakout_prob, cumulative_risk, detection_prob, hazard_rate, peak_hazard, rai, ModelParams};

/// Two-sided 99% standard normal quantile.
pub const Z99: f64 = 2.575_829_303_548_901;

/// Seed used by the command line and the acceptance checks unless overridden.
pub const DEFAULT_SEED: u64 = 20_240_611;

pub const DEFAULT_TRIALS: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MCConfig {
    pub params: ModelParams,
    pub trials: u64,
    pub seed: u64,
    /// Dominating rate for thinning; must be at least the peak hazard.
    pub max_rate: f64,
}

impl MCConfig {
    /// Uses the hazard ceiling `λ0·(1 + η)` as the dominating rate.
    pub fn new(params: ModelParams, trials: u64, seed: u64) -> Self {
        let max_rate = params.lambda0 * (1.0 + params.eta);
        Self { params, trials, seed, max_rate }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MCResult {
    pub mean_undetected: f64,
    pub p_at_least_one: f64,
    pub mean_ci99_half_width: f64,
    pub p_ci99_half_width: f64,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    sum: u64,
    sum_sq: u64,
    hit: u64,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally { sum: self.sum + o.sum, sum_sq: self.sum_sq + o.sum_sq, hit: self.hit + o.hit }
    }
}

fn run_trial(params: &ModelParams, max_rate: f64, seed: u64, trial: u64) -> u64 {
    if max_rate <= 0.0 {
        return 0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut t = 0.0;
    let mut undetected = 0;
    loop {
        let u: f64 = rng.random();
        t += -(1.0 - u).ln() / max_rate;
        if t > params.horizon {
            break;
        }
        let gap = rai(t, params);
        let rate = hazard_rate(gap, params.lambda0, params.eta, params.beta, params.tau);
        if rng.random::<f64>() * max_rate >= rate {
            continue;
        }
        let detect = detection_prob(gap, params.kappa_at(t), params.theta, params.pi0);
        if rng.random::<f64>() >= detect {
            undetected += 1;
        }
    }
    undetected
}

pub fn simulate(config: &MCConfig) -> Result<MCResult> {
    let params = &config.params;
    // Certain detection (pi0 = 1) is meaningful here even though the
    // analytic model requires pi0 < 1.
    let mut checked = params.clone();
    if checked.pi0 == 1.0 {
        checked.pi0 = 0.0;
    }
    checked.validate()?;
    if config.trials == 0 {
        return Err(Error::Domain("trials must be >= 1".into()));
    }
    let peak = peak_hazard(params);
    if !(config.max_rate >= peak) || !config.max_rate.is_finite() {
        return Err(Error::MaxRateTooLow { max_rate: config.max_rate, peak });
    }

    let tally = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let k = run_trial(params, config.max_rate, config.seed, i);
            Tally { sum: k, sum_sq: k * k, hit: u64::from(k > 0) }
        })
        .reduce(Tally::default, Tally::merge);

    let n = config.trials as f64;
    let mean = tally.sum as f64 / n;
    let p = tally.hit as f64 / n;
    let (mean_hw, p_hw) = if config.trials < 2 {
        (f64::INFINITY, f64::INFINITY)
    } else {
        let var = ((tally.sum_sq as f64 - n * mean * mean) / (n - 1.0)).max(0.0);
        let p_var = p * (1.0 - p) * n / (n - 1.0);
        (Z99 * (var / n).sqrt(), Z99 * (p_var / n).sqrt())
    };
    Ok(MCResult {
        mean_undetected: mean,
        p_at_least_one: p,
        mean_ci99_half_width: mean_hw,
        p_ci99_half_width: p_hw,
        trials: config.trials,
        seed: config.seed,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub scenario: String,
    pub trials: u64,
    pub seed: u64,
    pub analytic_r: f64,
    pub analytic_p: f64,
    pub mc: MCResult,
    pub r_in_ci: bool,
    pub p_in_ci: bool,
    /// Too few trials for a confidence interval.
    pub inconclusive: bool,
    pub pass: bool,
}

/// Compares analytic `R(T)` and `P(T)` with the 99% Monte Carlo intervals.
pub fn validate(scenario: &str, params: &ModelParams, trials: u64, seed: u64) -> Result<ValidationReport> {
    let analytic_r = cumulative_risk(params)?;
    let analytic_p = breakout_prob(analytic_r)?;
    let mc = simulate(&MCConfig::new(params.clone(), trials, seed))?;
    let inconclusive = !(mc.mean_ci99_half_width.is_finite() && mc.p_ci99_half_width.is_finite());
    let r_in_ci = (analytic_r - mc.mean_undetected).abs() <= mc.mean_ci99_half_width;
    let p_in_ci = (analytic_p - mc.p_at_least_one).abs() <= mc.p_ci99_half_width;
    Ok(ValidationReport {
        scenario: scenario.to_string(),
        trials,
        seed,
        analytic_r,
        analytic_p,
        pass: r_in_ci && p_in_ci && !inconclusive,
        mc,
        r_in_ci,
        p_in_ci,
        inconclusive,
    })
}

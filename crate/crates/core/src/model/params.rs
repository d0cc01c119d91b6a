use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One detection-capability upgrade: `delta` points added from `time` onward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetStep {
    #[serde(rename = "t")]
    pub time: f64,
    pub delta: f64,
}

/// Stepwise detection capability: a base level plus timed upgrades.
///
/// Upgrades are right-continuous, so the level at exactly `step.time`
/// already includes `step.delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetSchedule {
    pub d0: f64,
    pub steps: Vec<DetStep>,
}

impl DetSchedule {
    pub fn new(d0: f64, steps: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let schedule = Self { d0, steps: steps.into_iter().map(|(time, delta)| DetStep { time, delta }).collect() };
        schedule.validate()?;
        Ok(schedule)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.d0.is_finite() && self.d0 > 0.0) {
            return Err(Error::InvalidParams(format!("d0 must be > 0, got {}", self.d0)));
        }
        let mut prev = 0.0;
        for (i, s) in self.steps.iter().enumerate() {
            if !(s.time.is_finite() && s.time > prev) {
                return Err(Error::InvalidParams(format!(
                    "det step {i}: times must be > 0 and strictly increasing, got {}",
                    s.time
                )));
            }
            if !(s.delta.is_finite() && s.delta > 0.0) {
                return Err(Error::InvalidParams(format!("det step {i}: delta must be > 0, got {}", s.delta)));
            }
            prev = s.time;
        }
        Ok(())
    }

    /// Capability at `t`, counting upgrades with `time <= t`.
    pub fn capability_at(&self, t: f64) -> f64 {
        self.d0 + self.steps.iter().filter(|s| s.time <= t).map(|s| s.delta).sum::<f64>()
    }

    /// Left limit of the capability at `t` (upgrades with `time < t`).
    pub fn capability_before(&self, t: f64) -> f64 {
        self.d0 + self.steps.iter().filter(|s| s.time < t).map(|s| s.delta).sum::<f64>()
    }

    pub fn step_times(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps.iter().map(|s| s.time)
    }
}

/// A detection slope that holds before `until`, after which the main
/// `kappa` applies. Used for the "switch at first moonshot upgrade" reading.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EarlyKappa {
    pub until: f64,
    pub kappa: f64,
}

/// Full parameter vector of the technology-race model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "WireParams", into = "WireParams")]
pub struct ModelParams {
    /// PET capability at t = 0.
    pub p0: f64,
    /// PET logistic growth rate, per year.
    pub g_p: f64,
    /// PET logistic ceiling.
    pub p_max: f64,
    /// Detection logistic slope, per capability point.
    pub kappa: f64,
    /// Detection logistic intercept.
    pub theta: f64,
    /// Residual detection floor.
    pub pi0: f64,
    /// Baseline breakout hazard, per year.
    pub lambda0: f64,
    /// Maximum proportional opportunism boost.
    pub eta: f64,
    /// Opportunism sigmoid slope, per capability point.
    pub beta: f64,
    /// RAI threshold above which opportunism kicks in.
    pub tau: f64,
    pub det_schedule: DetSchedule,
    /// Horizon in years.
    pub horizon: f64,
    pub early_kappa: Option<EarlyKappa>,
}

pub const LIMITED_GROWTH: f64 = 0.23;
pub const DISRUPTIVE_GROWTH: f64 = 0.33;
pub const TRANSFORMATIVE_GROWTH: f64 = 1.19;
/// Growth rate matching a 7-month doubling time to three digits.
pub const TRANSFORMATIVE_GROWTH_PRECISE: f64 = 1.189;

impl ModelParams {
    /// Limited-growth PET against baseline detectors, no opportunism.
    pub fn baseline() -> Self {
        Self {
            p0: 20.0,
            g_p: LIMITED_GROWTH,
            p_max: 120.0,
            kappa: 0.4,
            theta: 0.0,
            pi0: 0.10,
            lambda0: 0.05,
            eta: 0.0,
            beta: 0.10,
            tau: 40.0,
            det_schedule: DetSchedule {
                d0: 50.0,
                steps: vec![DetStep { time: 3.0, delta: 5.0 }, DetStep { time: 7.0, delta: 4.0 }],
            },
            horizon: 10.0,
            early_kappa: None,
        }
    }

    pub fn d0(&self) -> f64 {
        self.det_schedule.d0
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("p0", self.p0),
            ("g_p", self.g_p),
            ("p_max", self.p_max),
            ("kappa", self.kappa),
            ("theta", self.theta),
            ("pi0", self.pi0),
            ("lambda0", self.lambda0),
            ("eta", self.eta),
            ("beta", self.beta),
            ("tau", self.tau),
            ("horizon", self.horizon),
        ];
        if let Some((name, v)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("{name} must be finite, got {v}")));
        }
        let check = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(Error::InvalidParams(msg.to_string())) };
        check(self.p0 > 0.0 && self.p0 < self.p_max, "require 0 < p0 < p_max")?;
        check(self.g_p > 0.0, "g_p must be > 0")?;
        check(self.kappa > 0.0, "kappa must be > 0")?;
        check(self.beta > 0.0, "beta must be > 0")?;
        check((0.0..1.0).contains(&self.pi0), "pi0 must lie in [0, 1)")?;
        check(self.lambda0 >= 0.0, "lambda0 must be >= 0")?;
        check(self.eta >= 0.0, "eta must be >= 0")?;
        check(self.horizon > 0.0, "horizon must be > 0")?;
        if let Some(ek) = self.early_kappa {
            check(ek.until.is_finite() && ek.until > 0.0, "early_kappa.until must be > 0")?;
            check(ek.kappa.is_finite() && ek.kappa > 0.0, "early_kappa.kappa must be > 0")?;
        }
        self.det_schedule.validate()
    }

    /// Detection slope in force at `t` (right-continuous).
    pub fn kappa_at(&self, t: f64) -> f64 {
        match self.early_kappa {
            Some(ek) if t < ek.until => ek.kappa,
            _ => self.kappa,
        }
    }

    /// Left limit of the detection slope at `t`.
    pub fn kappa_before(&self, t: f64) -> f64 {
        match self.early_kappa {
            Some(ek) if t <= ek.until => ek.kappa,
            _ => self.kappa,
        }
    }

    /// Sorted, de-duplicated points in `[0, horizon]` where the integrand
    /// may jump: the ends plus every DET step and a kappa switch.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![0.0, self.horizon];
        pts.extend(self.det_schedule.step_times().filter(|&t| t > 0.0 && t < self.horizon));
        if let Some(ek) = self.early_kappa {
            if ek.until > 0.0 && ek.until < self.horizon {
                pts.push(ek.until);
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}

/// Flat JSON layout of [`ModelParams`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WireParams {
    pub p0: f64,
    pub d0: f64,
    pub g_p: f64,
    pub p_max: f64,
    pub kappa: f64,
    pub theta: f64,
    pub pi0: f64,
    pub lambda0: f64,
    pub eta: f64,
    pub beta: f64,
    pub tau: f64,
    pub det_steps: Vec<DetStep>,
    pub horizon: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub early_kappa: Option<EarlyKappa>,
}

impl From<WireParams> for ModelParams {
    fn from(w: WireParams) -> Self {
        Self {
            p0: w.p0,
            g_p: w.g_p,
            p_max: w.p_max,
            kappa: w.kappa,
            theta: w.theta,
            pi0: w.pi0,
            lambda0: w.lambda0,
            eta: w.eta,
            beta: w.beta,
            tau: w.tau,
            det_schedule: DetSchedule { d0: w.d0, steps: w.det_steps },
            horizon: w.horizon,
            early_kappa: w.early_kappa,
        }
    }
}

impl From<ModelParams> for WireParams {
    fn from(p: ModelParams) -> Self {
        Self {
            p0: p.p0,
            d0: p.det_schedule.d0,
            g_p: p.g_p,
            p_max: p.p_max,
            kappa: p.kappa,
            theta: p.theta,
            pi0: p.pi0,
            lambda0: p.lambda0,
            eta: p.eta,
            beta: p.beta,
            tau: p.tau,
            det_steps: p.det_schedule.steps,
            horizon: p.horizon,
            early_kappa: p.early_kappa,
        }
    }
}

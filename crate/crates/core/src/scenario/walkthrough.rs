use std::fmt;

use serde::{Deserialize, Serialize};

use super::catalog::PresetCatalog;
use crate::error::Result;
use crate::model::{breakout_prob, crossing_times, cumulative_risk, DetStep};

/// The limited-growth case worked step by step, then repeated with the
/// moonshot detector package.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Walkthrough {
    pub g_p: f64,
    pub p0: f64,
    pub p_max: f64,
    pub d0: f64,
    pub base_steps: Vec<DetStep>,
    pub t_star: Option<f64>,
    pub r_base: f64,
    pub p_base: f64,
    pub moonshot_steps: Vec<DetStep>,
    pub moonshot_kappa: f64,
    pub t_star_moonshot: Option<f64>,
    pub r_moonshot: f64,
    pub p_moonshot: f64,
    pub delta_r_pct: f64,
}

pub fn walkthrough(catalog: &PresetCatalog) -> Result<Walkthrough> {
    let base = catalog.build_preset("limited/baseline/no-opp")?;
    let moon = catalog.build_preset("limited/moonshot/no-opp")?;
    let r_base = cumulative_risk(&base)?;
    let r_moonshot = cumulative_risk(&moon)?;
    Ok(Walkthrough {
        g_p: base.g_p,
        p0: base.p0,
        p_max: base.p_max,
        d0: base.d0(),
        base_steps: base.det_schedule.steps.clone(),
        t_star: crossing_times(&base).first_persistent,
        r_base,
        p_base: breakout_prob(r_base)?,
        moonshot_steps: moon.det_schedule.steps.clone(),
        moonshot_kappa: moon.kappa,
        t_star_moonshot: crossing_times(&moon).first_persistent,
        r_moonshot,
        p_moonshot: breakout_prob(r_moonshot)?,
        delta_r_pct: 100.0 * (r_moonshot - r_base) / r_base,
    })
}

fn levels(d0: f64, steps: &[DetStep]) -> String {
    let mut out = Vec::new();
    let mut level = d0;
    let mut from = 0.0;
    for s in steps {
        out.push(format!("{level} for {from} <= t < {}", s.time));
        level += s.delta;
        from = s.time;
    }
    out.push(format!("{level} for t >= {from}"));
    out.join("; ")
}

impl fmt::Display for Walkthrough {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ratio = self.p_max / self.p0 - 1.0;
        writeln!(f, "Step 1: PET path")?;
        writeln!(f, "  P(t) = {} / (1 + {ratio} e^(-{} t))", self.p_max, self.g_p)?;
        writeln!(f, "Step 2: DET path")?;
        writeln!(f, "  D(t) = {}", levels(self.d0, &self.base_steps))?;
        writeln!(f, "Step 3: RAI trajectory")?;
        match self.t_star {
            Some(t) => writeln!(f, "  t* = {t:.4} years (RAI >= 0 afterwards)")?,
            None => writeln!(f, "  RAI stays negative over the horizon")?,
        }
        writeln!(f, "Step 4: risk without moonshot")?;
        writeln!(f, "  R(10) = {:.4}  P(10) = {:.4}", self.r_base, self.p_base)?;
        writeln!(f, "Step 5: moonshot DET path (kappa = {})", self.moonshot_kappa)?;
        writeln!(f, "  D(t) = {}", levels(self.d0, &self.moonshot_steps))?;
        match self.t_star_moonshot {
            Some(t) => writeln!(f, "  t* = {t:.4} years")?,
            None => writeln!(f, "  t* -> infinity: RAI stays negative over the horizon")?,
        }
        writeln!(f, "Step 6: risk with moonshot")?;
        writeln!(f, "  R(10) = {:.4}  P(10) = {:.4}", self.r_moonshot, self.p_moonshot)?;
        writeln!(f, "  change in R = {:.1}%", self.delta_r_pct)
    }
}

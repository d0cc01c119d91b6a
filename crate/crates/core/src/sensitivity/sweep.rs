use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{cumulative_risk, cumulative_risk_shifted, ModelParams};
use crate::scenario::{DetPackage, PetRegime, PresetCatalog, ScenarioSpec};

/// Parameters covered by the one-at-a-time robustness grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    PMax,
    Pi0,
    Eta,
    Beta,
    Kappa,
    Tau,
}

impl SweepParameter {
    pub const ALL: [SweepParameter; 6] = [
        SweepParameter::PMax,
        SweepParameter::Pi0,
        SweepParameter::Eta,
        SweepParameter::Beta,
        SweepParameter::Kappa,
        SweepParameter::Tau,
    ];

    pub fn key(self) -> &'static str {
        match self {
            SweepParameter::PMax => "p_max",
            SweepParameter::Pi0 => "pi0",
            SweepParameter::Eta => "eta",
            SweepParameter::Beta => "beta",
            SweepParameter::Kappa => "kappa",
            SweepParameter::Tau => "tau",
        }
    }

    /// The robustness grid for this parameter.
    pub fn default_values(self) -> Vec<f64> {
        match self {
            SweepParameter::PMax => vec![100.0, 110.0, 120.0, 130.0, 140.0],
            SweepParameter::Pi0 => vec![0.05, 0.10, 0.15, 0.20],
            SweepParameter::Eta => vec![1.0, 2.0, 3.0, 4.0, 5.0],
            SweepParameter::Beta => vec![0.05, 0.08, 0.10, 0.12, 0.15],
            SweepParameter::Kappa => vec![0.25, 0.33, 0.40, 0.50, 0.60],
            SweepParameter::Tau => vec![20.0, 30.0, 40.0, 50.0, 60.0],
        }
    }

    /// Plausible range; values outside it are evaluated with a warning.
    pub fn plausible_range(self) -> (f64, f64) {
        match self {
            SweepParameter::PMax => (60.0, 300.0),
            SweepParameter::Pi0 => (0.0, 0.5),
            SweepParameter::Eta => (0.0, 10.0),
            SweepParameter::Beta => (0.01, 1.0),
            SweepParameter::Kappa => (0.05, 2.0),
            SweepParameter::Tau => (0.0, 100.0),
        }
    }

    pub fn get(self, p: &ModelParams) -> f64 {
        match self {
            SweepParameter::PMax => p.p_max,
            SweepParameter::Pi0 => p.pi0,
            SweepParameter::Eta => p.eta,
            SweepParameter::Beta => p.beta,
            SweepParameter::Kappa => p.kappa,
            SweepParameter::Tau => p.tau,
        }
    }

    pub fn set(self, p: &mut ModelParams, value: f64) {
        let slot = match self {
            SweepParameter::PMax => &mut p.p_max,
            SweepParameter::Pi0 => &mut p.pi0,
            SweepParameter::Eta => &mut p.eta,
            SweepParameter::Beta => &mut p.beta,
            SweepParameter::Kappa => &mut p.kappa,
            SweepParameter::Tau => &mut p.tau,
        };
        *slot = value;
    }

    pub fn with(self, p: &ModelParams, value: f64) -> ModelParams {
        let mut out = p.clone();
        self.set(&mut out, value);
        out
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepParameter::ALL.into_iter().find(|p| p.key() == s).ok_or_else(|| Error::UnknownParameter {
            name: s.to_string(),
            valid: SweepParameter::ALL.iter().map(|p| p.key().to_string()).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub regimes: Vec<PetRegime>,
    /// Base point; each regime replaces only `g_p`.
    pub base: ModelParams,
}

impl SweepGrid {
    /// Default grid for `parameter` around the calibrated robustness
    /// baseline (baseline DET, eta = 3), over all three regimes.
    pub fn robustness(parameter: SweepParameter, catalog: &PresetCatalog) -> Result<Self> {
        Ok(Self {
            parameter,
            values: parameter.default_values(),
            regimes: PetRegime::ALL.to_vec(),
            base: robustness_base(catalog)?,
        })
    }
}

/// The robustness baseline: limited regime, baseline DET, opportunism on.
pub fn robustness_base(catalog: &PresetCatalog) -> Result<ModelParams> {
    catalog.build(&ScenarioSpec::new(PetRegime::Limited, DetPackage::Baseline, true))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub parameter: SweepParameter,
    pub value: f64,
    pub regime: PetRegime,
    pub r10: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSurface {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub regimes: Vec<PetRegime>,
    /// `r10[i][j]`: risk at `values[i]` under `regimes[j]`.
    pub r10: Vec<Vec<f64>>,
    pub warnings: Vec<String>,
}

impl SweepSurface {
    pub fn points(&self) -> impl Iterator<Item = SweepPoint> + '_ {
        self.values.iter().enumerate().flat_map(move |(i, &value)| {
            self.regimes.iter().enumerate().map(move |(j, &regime)| SweepPoint {
                parameter: self.parameter,
                value,
                regime,
                r10: self.r10[i][j],
            })
        })
    }

    pub fn at(&self, value: f64, regime: PetRegime) -> Option<f64> {
        let i = self.values.iter().position(|&v| v == value)?;
        let j = self.regimes.iter().position(|&r| r == regime)?;
        Some(self.r10[i][j])
    }

    /// Max over min risk across the grid for one regime.
    pub fn spread(&self, regime: PetRegime) -> Option<f64> {
        let j = self.regimes.iter().position(|&r| r == regime)?;
        let col = self.r10.iter().map(|row| row[j]);
        let max = col.clone().fold(f64::NEG_INFINITY, f64::max);
        let min = col.fold(f64::INFINITY, f64::min);
        Some(max / min)
    }
}

/// Evaluates `R(horizon)` at every (value, regime) grid point, taking each
/// regime's growth rate from `catalog`.
pub fn oat_sweep(catalog: &PresetCatalog, grid: &SweepGrid) -> Result<SweepSurface> {
    let (lo, hi) = grid.parameter.plausible_range();
    let warnings = grid
        .values
        .iter()
        .filter(|v| !(lo..=hi).contains(*v))
        .map(|v| format!("{} = {v} is outside the plausible range [{lo}, {hi}]", grid.parameter))
        .collect();
    let growth: Vec<f64> = grid.regimes.iter().map(|&r| catalog.regime_growth(r)).collect();
    let r10 = grid
        .values
        .par_iter()
        .map(|&v| {
            growth
                .iter()
                .map(|&g| {
                    let mut p = grid.parameter.with(&grid.base, v);
                    p.g_p = g;
                    cumulative_risk(&p)
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepSurface {
        parameter: grid.parameter,
        values: grid.values.clone(),
        regimes: grid.regimes.clone(),
        r10,
        warnings,
    })
}

/// Arc elasticity between `lo` and `hi`, normalised at the base value.
pub fn arc_elasticity(parameter: SweepParameter, lo: f64, hi: f64, base: &ModelParams) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::Domain(format!("require lo < hi, got {lo} and {hi}")));
    }
    let x0 = parameter.get(base);
    let r0 = cumulative_risk(base)?;
    if r0 == 0.0 {
        return Err(Error::UndefinedElasticity);
    }
    let r_hi = cumulative_risk(&parameter.with(base, hi))?;
    let r_lo = cumulative_risk(&parameter.with(base, lo))?;
    Ok((r_hi - r_lo) / r0 * x0 / (hi - lo))
}

/// Relative change in risk when the whole RAI path moves by `shift` points.
pub fn rai_shift_sensitivity(params: &ModelParams, shift: f64) -> Result<f64> {
    let r = cumulative_risk(params)?;
    if r == 0.0 {
        return Err(Error::UndefinedElasticity);
    }
    Ok((cumulative_risk_shifted(params, shift)? - r) / r)
}

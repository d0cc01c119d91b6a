use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::catalog::{display_name, DetPackage, PetRegime, PresetCatalog, ScenarioSpec};
use crate::error::{Error, Result};
use crate::model::{breakout_prob, cumulative_risk};

/// Horizon risk of one scenario together with its comparisons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiskSummary {
    pub scenario: String,
    pub r10: f64,
    pub p10: f64,
    /// Percent change in R against the same regime's baseline scenario.
    pub delta_r_pct: f64,
    /// Percent change in P against the same regime's baseline scenario.
    pub delta_p_pct: f64,
    /// Relative change in R against the Disruptive baseline.
    pub epsilon_r: f64,
}

fn pct(x: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        if x == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        100.0 * (x - reference) / reference
    }
}

fn summarize(name: &str, r: f64, regime_ref: f64, disruptive_ref: f64) -> Result<RiskSummary> {
    let p = breakout_prob(r)?;
    let p_ref = breakout_prob(regime_ref)?;
    Ok(RiskSummary {
        scenario: name.to_string(),
        r10: r,
        p10: p,
        delta_r_pct: pct(r, regime_ref),
        delta_p_pct: pct(p, p_ref),
        epsilon_r: pct(r, disruptive_ref) / 100.0,
    })
}

fn disruptive_reference(spec: &ScenarioSpec) -> ScenarioSpec {
    ScenarioSpec::new(PetRegime::Disruptive, DetPackage::Baseline, false).with_overrides(spec.overrides.clone())
}

/// Evaluates a scenario and its two reference scenarios.
pub fn run_scenario(catalog: &PresetCatalog, spec: &ScenarioSpec) -> Result<RiskSummary> {
    let r = cumulative_risk(&catalog.build(spec)?)?;
    let r_regime = cumulative_risk(&catalog.build(&spec.regime_baseline())?)?;
    let r_disruptive = cumulative_risk(&catalog.build(&disruptive_reference(spec))?)?;
    summarize(&spec.name, r, r_regime, r_disruptive)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableId {
    /// Risk and percentage change per regime baseline.
    Table4,
    /// Risk, probability and change relative to the Disruptive baseline.
    Table5,
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table4" => Ok(TableId::Table4),
            "table5" => Ok(TableId::Table5),
            _ => Err(Error::Domain(format!("unknown table `{s}` (table4, table5)"))),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::Table4 => "table4",
            TableId::Table5 => "table5",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    #[serde(flatten)]
    pub summary: RiskSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioTable {
    pub id: TableId,
    pub rows: Vec<TableRow>,
}

impl ScenarioTable {
    pub fn row(&self, scenario: &str) -> Option<&RiskSummary> {
        self.rows.iter().map(|r| &r.summary).find(|s| s.scenario == scenario)
    }

    pub fn row_by_label(&self, label: &str) -> Option<&RiskSummary> {
        self.rows.iter().find(|r| r.label == label).map(|r| &r.summary)
    }

    pub fn columns(&self) -> &'static [&'static str] {
        match self.id {
            TableId::Table4 => &["scenario", "r10", "p10", "delta_r_pct", "delta_p_pct"],
            TableId::Table5 => &["scenario", "r10", "p10", "epsilon_r"],
        }
    }
}

/// Evaluates every preset once (in parallel) and lays out the requested table.
pub fn scenario_table(catalog: &PresetCatalog, id: TableId) -> Result<ScenarioTable> {
    let specs = catalog.specs();
    let risks: Vec<f64> =
        specs.par_iter().map(|s| catalog.build(s).and_then(|p| cumulative_risk(&p))).collect::<Result<_>>()?;
    let lookup = |regime: PetRegime, det: DetPackage, opp: bool| -> f64 {
        let i = specs
            .iter()
            .position(|s| s.pet_regime == regime && s.det_package == det && s.opportunism == opp)
            .expect("catalog covers every combination");
        risks[i]
    };
    let disruptive = lookup(PetRegime::Disruptive, DetPackage::Baseline, false);

    // Table 4 lists moonshot before opportunistic, Table 5 the reverse.
    let order: [(DetPackage, bool); 4] = match id {
        TableId::Table4 => [
            (DetPackage::Baseline, false),
            (DetPackage::Moonshot, false),
            (DetPackage::Baseline, true),
            (DetPackage::Moonshot, true),
        ],
        TableId::Table5 => [
            (DetPackage::Baseline, false),
            (DetPackage::Baseline, true),
            (DetPackage::Moonshot, false),
            (DetPackage::Moonshot, true),
        ],
    };
    let mut rows = Vec::with_capacity(12);
    for regime in PetRegime::ALL {
        let regime_ref = lookup(regime, DetPackage::Baseline, false);
        for (det, opp) in order {
            let spec = ScenarioSpec::new(regime, det, opp);
            let summary = summarize(&spec.name, lookup(regime, det, opp), regime_ref, disruptive)?;
            rows.push(TableRow { label: display_name(catalog, &spec), summary });
        }
    }
    Ok(ScenarioTable { id, rows })
}

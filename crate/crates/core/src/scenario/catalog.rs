use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DetSchedule, DetStep, EarlyKappa, ModelParams};

/// Preset file shipped with the crate.
pub const SHIPPED_PRESETS: &str = include_str!("../../data/presets.toml");

/// Environment variable naming a preset file that replaces the shipped one.
pub const PRESETS_ENV: &str = "TECHRACE_PRESETS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PetRegime {
    Limited,
    Disruptive,
    Transformative,
}

impl PetRegime {
    pub const ALL: [PetRegime; 3] = [PetRegime::Limited, PetRegime::Disruptive, PetRegime::Transformative];

    pub fn key(self) -> &'static str {
        match self {
            PetRegime::Limited => "limited",
            PetRegime::Disruptive => "disruptive",
            PetRegime::Transformative => "transformative",
        }
    }
}

impl fmt::Display for PetRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for PetRegime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PetRegime::ALL
            .into_iter()
            .find(|r| r.key() == s)
            .ok_or_else(|| Error::Config(format!("unknown PET regime `{s}` (limited, disruptive, transformative)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetPackage {
    Baseline,
    Moonshot,
}

impl DetPackage {
    pub const ALL: [DetPackage; 2] = [DetPackage::Baseline, DetPackage::Moonshot];

    pub fn key(self) -> &'static str {
        match self {
            DetPackage::Baseline => "baseline",
            DetPackage::Moonshot => "moonshot",
        }
    }
}

impl FromStr for DetPackage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DetPackage::ALL
            .into_iter()
            .find(|d| d.key() == s)
            .ok_or_else(|| Error::Config(format!("unknown DET package `{s}` (baseline, moonshot)")))
    }
}

/// Optional substitutions applied on top of a preset.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
}

impl ParamOverrides {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    pub fn apply(&self, p: &mut ModelParams) {
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut p.p0, self.p0);
        set(&mut p.det_schedule.d0, self.d0);
        set(&mut p.g_p, self.g_p);
        set(&mut p.p_max, self.p_max);
        set(&mut p.kappa, self.kappa);
        set(&mut p.theta, self.theta);
        set(&mut p.pi0, self.pi0);
        set(&mut p.lambda0, self.lambda0);
        set(&mut p.eta, self.eta);
        set(&mut p.beta, self.beta);
        set(&mut p.tau, self.tau);
        set(&mut p.horizon, self.horizon);
    }
}

/// A named scenario: PET regime, DET package, opportunism flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub name: String,
    pub pet_regime: PetRegime,
    pub det_package: DetPackage,
    pub opportunism: bool,
    #[serde(default, skip_serializing_if = "ParamOverrides::is_empty")]
    pub overrides: ParamOverrides,
}

impl ScenarioSpec {
    pub fn new(pet_regime: PetRegime, det_package: DetPackage, opportunism: bool) -> Self {
        Self {
            name: preset_name(pet_regime, det_package, opportunism),
            pet_regime,
            det_package,
            opportunism,
            overrides: ParamOverrides::default(),
        }
    }

    pub fn with_overrides(mut self, overrides: ParamOverrides) -> Self {
        self.overrides = overrides;
        self
    }

    /// Same regime, baseline DET, no opportunism: the reference used for
    /// per-regime percentage changes.
    pub fn regime_baseline(&self) -> ScenarioSpec {
        ScenarioSpec::new(self.pet_regime, DetPackage::Baseline, false).with_overrides(self.overrides.clone())
    }
}

pub fn preset_name(regime: PetRegime, det: DetPackage, opportunism: bool) -> String {
    format!("{}/{}/{}", regime.key(), det.key(), if opportunism { "opp" } else { "no-opp" })
}

/// Human-readable label, e.g. "Disruptive AI + Moonshot".
pub fn display_name(catalog: &PresetCatalog, spec: &ScenarioSpec) -> String {
    let base = catalog.regime_display(spec.pet_regime);
    match (spec.det_package, spec.opportunism) {
        (DetPackage::Baseline, false) => base.to_string(),
        (DetPackage::Moonshot, false) => format!("{base} + Moonshot"),
        (DetPackage::Baseline, true) => format!("{base} + Opportunistic"),
        (DetPackage::Moonshot, true) => format!("{base} + Both"),
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct BaselineSection {
    p0: f64,
    d0: f64,
    p_max: f64,
    theta: f64,
    pi0: f64,
    lambda0: f64,
    beta: f64,
    tau: f64,
    horizon: f64,
    opportunistic_eta: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegimeSection {
    display: String,
    g_p: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct DetSection {
    kappa: f64,
    steps: Vec<[f64; 2]>,
    #[serde(default)]
    kappa_switch_at_first_upgrade: bool,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetFile {
    baseline: BaselineSection,
    regimes: BTreeMap<String, RegimeSection>,
    det: BTreeMap<String, DetSection>,
}

/// The twelve scenario presets, parsed from a preset file.
#[derive(Debug, Clone, PartialEq)]
pub struct PresetCatalog {
    file: PresetFile,
}

impl PresetCatalog {
    pub fn from_toml_str(src: &str) -> Result<Self> {
        let file: PresetFile = toml::from_str(src).map_err(|e| Error::Config(e.to_string()))?;
        for r in PetRegime::ALL {
            if !file.regimes.contains_key(r.key()) {
                return Err(Error::Config(format!("missing [regimes.{}]", r.key())));
            }
        }
        for d in DetPackage::ALL {
            if !file.det.contains_key(d.key()) {
                return Err(Error::Config(format!("missing [det.{}]", d.key())));
            }
        }
        let catalog = Self { file };
        for spec in catalog.specs() {
            catalog.build(&spec)?.validate()?;
        }
        Ok(catalog)
    }

    pub fn shipped() -> Self {
        Self::from_toml_str(SHIPPED_PRESETS).expect("shipped preset file is valid")
    }

    /// Shipped presets, unless [`PRESETS_ENV`] names a replacement file.
    pub fn load() -> Result<Self> {
        match std::env::var_os(PRESETS_ENV) {
            Some(path) => {
                let src = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.to_string_lossy())))?;
                Self::from_toml_str(&src)
            }
            None => Ok(Self::shipped()),
        }
    }

    /// All twelve presets in table order: per regime, baseline, moonshot,
    /// opportunistic, both.
    pub fn specs(&self) -> Vec<ScenarioSpec> {
        PetRegime::ALL
            .into_iter()
            .flat_map(|r| {
                [
                    (DetPackage::Baseline, false),
                    (DetPackage::Moonshot, false),
                    (DetPackage::Baseline, true),
                    (DetPackage::Moonshot, true),
                ]
                .map(|(d, o)| ScenarioSpec::new(r, d, o))
            })
            .collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.specs().into_iter().map(|s| s.name).collect()
    }

    pub fn spec(&self, name: &str) -> Result<ScenarioSpec> {
        self.specs()
            .into_iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownPreset { name: name.to_string(), valid: self.names() })
    }

    pub fn regime_display(&self, regime: PetRegime) -> &str {
        &self.file.regimes[regime.key()].display
    }

    pub fn regime_growth(&self, regime: PetRegime) -> f64 {
        self.file.regimes[regime.key()].g_p
    }

    pub fn build(&self, spec: &ScenarioSpec) -> Result<ModelParams> {
        let b = &self.file.baseline;
        let det = &self.file.det[spec.det_package.key()];
        let base_kappa = self.file.det[DetPackage::Baseline.key()].kappa;
        let schedule =
            DetSchedule { d0: b.d0, steps: det.steps.iter().map(|&[time, delta]| DetStep { time, delta }).collect() };
        let early_kappa = match (det.kappa_switch_at_first_upgrade, schedule.steps.first()) {
            (true, Some(first)) => Some(EarlyKappa { until: first.time, kappa: base_kappa }),
            _ => None,
        };
        let mut params = ModelParams {
            p0: b.p0,
            g_p: self.regime_growth(spec.pet_regime),
            p_max: b.p_max,
            kappa: det.kappa,
            theta: b.theta,
            pi0: b.pi0,
            lambda0: b.lambda0,
            eta: if spec.opportunism { b.opportunistic_eta } else { 0.0 },
            beta: b.beta,
            tau: b.tau,
            det_schedule: schedule,
            horizon: b.horizon,
            early_kappa,
        };
        spec.overrides.apply(&mut params);
        params.validate()?;
        Ok(params)
    }

    pub fn build_preset(&self, name: &str) -> Result<ModelParams> {
        self.build(&self.spec(name)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_presets() {
        let c = PresetCatalog::shipped();
        let names = c.names();
        assert_eq!(names.len(), 12);
        assert!(names.contains(&"transformative/baseline/opp".to_string()));
    }

    #[test]
    fn regime_growth_rates() {
        let c = PresetCatalog::shipped();
        assert_eq!(c.build_preset("limited/baseline/no-opp").unwrap().g_p, 0.23);
        assert_eq!(c.build_preset("disruptive/baseline/no-opp").unwrap().g_p, 0.33);
        assert_eq!(c.build_preset("transformative/baseline/opp").unwrap().g_p, 1.19);
    }

    #[test]
    fn moonshot_package() {
        let p = PresetCatalog::shipped().build_preset("limited/moonshot/no-opp").unwrap();
        let steps: Vec<(f64, f64)> = p.det_schedule.steps.iter().map(|s| (s.time, s.delta)).collect();
        assert_eq!(steps, vec![(1.0, 12.0), (3.0, 10.0), (6.0, 10.0)]);
        assert_eq!(p.kappa, 0.6);
        assert_eq!(p.early_kappa, None);
    }

    #[test]
    fn common_baseline_values() {
        let c = PresetCatalog::shipped();
        for name in c.names() {
            let p = c.build_preset(&name).unwrap();
            assert_eq!((p.p0, p.d0(), p.p_max, p.pi0, p.lambda0), (20.0, 50.0, 120.0, 0.10, 0.05));
            assert_eq!(p.eta, if name.ends_with("/opp") { 3.0 } else { 0.0 });
        }
    }

    #[test]
    fn unknown_preset_lists_valid_names() {
        let err = PresetCatalog::shipped().build_preset("no-such").unwrap_err();
        match &err {
            Error::UnknownPreset { valid, .. } => assert_eq!(valid.len(), 12),
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("limited/baseline/no-opp"));
    }

    #[test]
    fn kappa_switch_flag() {
        let src =
            SHIPPED_PRESETS.replace("kappa_switch_at_first_upgrade = false", "kappa_switch_at_first_upgrade = true");
        let c = PresetCatalog::from_toml_str(&src).unwrap();
        let p = c.build_preset("disruptive/moonshot/no-opp").unwrap();
        assert_eq!(p.early_kappa, Some(EarlyKappa { until: 1.0, kappa: 0.4 }));
    }

    #[test]
    fn overrides_apply() {
        let c = PresetCatalog::shipped();
        let spec = c.spec("limited/baseline/no-opp").unwrap().with_overrides(ParamOverrides {
            horizon: Some(5.0),
            pi0: Some(0.2),
            ..Default::default()
        });
        let p = c.build(&spec).unwrap();
        assert_eq!((p.horizon, p.pi0), (5.0, 0.2));
    }

    #[test]
    fn bad_file_is_rejected() {
        assert!(PresetCatalog::from_toml_str("[baseline]\np0 = 1").is_err());
        let broken = SHIPPED_PRESETS.replace("steps = [[3.0, 5.0], [7.0, 4.0]]", "steps = [[7.0, 5.0], [3.0, 4.0]]");
        assert!(PresetCatalog::from_toml_str(&broken).is_err());
    }
}

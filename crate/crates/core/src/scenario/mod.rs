//! Scenario presets and the reports built from them.

mod catalog;
mod report;
mod walkthrough;

pub use catalog::{
    display_name, preset_name, DetPackage, ParamOverrides, PetRegime, PresetCatalog, ScenarioSpec, PRESETS_ENV,
    SHIPPED_PRESETS,
};
pub use report::{run_scenario, scenario_table, RiskSummary, ScenarioTable, TableId, TableRow};
pub use walkthrough::{walkthrough, Walkthrough};

//! Lists the shipped presets, evaluates each one, then builds a custom
//! scenario from a preset plus overrides.
//!
//!     cargo run --example presets

use techrace::model::{breakout_prob, crossing_times, cumulative_risk};
use techrace::scenario::{display_name, DetPackage, ParamOverrides, PetRegime, PresetCatalog, ScenarioSpec};

fn main() -> techrace::Result<()> {
    let catalog = PresetCatalog::load()?;
    println!("{:<32}{:<36}{:>8}{:>8}{:>8}", "preset", "scenario", "R(10)", "P(10)", "t*");
    for spec in catalog.specs() {
        let params = catalog.build(&spec)?;
        let r = cumulative_risk(&params)?;
        let crossing = crossing_times(&params).first_persistent.map_or("-".to_string(), |t| format!("{t:.2}"));
        println!(
            "{:<32}{:<36}{:>8.4}{:>8.4}{:>8}",
            spec.name,
            display_name(&catalog, &spec),
            r,
            breakout_prob(r)?,
            crossing
        );
    }

    let overrides = ParamOverrides { pi0: Some(0.15), lambda0: Some(0.08), ..Default::default() };
    let spec = ScenarioSpec::new(PetRegime::Disruptive, DetPackage::Moonshot, true).with_overrides(overrides);
    let params = catalog.build(&spec)?;
    let r = cumulative_risk(&params)?;
    println!("\ncustom {}: pi0=0.15, lambda0=0.08 -> R(10)={r:.4}, P(10)={:.4}", spec.name, breakout_prob(r)?);
    println!("{}", serde_json::to_string_pretty(&params).expect("params serialize"));
    Ok(())
}

//! Simulates the attempt process by thinning and compares it with the
//! analytic risk for every preset.
//!
//!     cargo run --release --example montecarlo -- [trials] [seed]

use techrace::montecarlo::{simulate, validate, MCConfig, DEFAULT_SEED, DEFAULT_TRIALS};
use techrace::output::{write_validation, OutputSpec};
use techrace::scenario::PresetCatalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let trials = args.next().map(|s| s.parse()).transpose()?.unwrap_or(DEFAULT_TRIALS);
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(DEFAULT_SEED);
    let catalog = PresetCatalog::load()?;

    let params = catalog.build_preset("transformative/baseline/opp")?;
    let mc = simulate(&MCConfig::new(params, trials, seed))?;
    println!("{}", serde_json::to_string_pretty(&mc)?);

    let reports = catalog
        .names()
        .iter()
        .map(|name| validate(name, &catalog.build_preset(name)?, trials, seed))
        .collect::<techrace::Result<Vec<_>>>()?;
    write_validation(&mut std::io::stdout(), &reports, &OutputSpec::default())?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    println!("{} of {} presets inside the 99% interval", reports.len() - failed, reports.len());
    Ok(())
}

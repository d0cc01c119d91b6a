//! Both scenario tables, as text and CSV.
//!
//!     cargo run --example tables

use techrace::output::{write_table, Format, OutputSpec};
use techrace::scenario::{scenario_table, PresetCatalog, TableId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = PresetCatalog::load()?;
    let mut stdout = std::io::stdout();
    for id in [TableId::Table4, TableId::Table5] {
        let table = scenario_table(&catalog, id)?;
        println!("== {id} ==");
        write_table(&mut stdout, &table, &OutputSpec::default())?;
        println!();
        write_table(&mut stdout, &table, &OutputSpec { format: Format::Csv, precision: 4 })?;
        println!();
    }
    Ok(())
}

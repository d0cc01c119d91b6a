//! Samples one preset over time, prints a yearly summary and writes the
//! full series as CSV.
//!
//!     cargo run --example trajectory -- [preset] [out.csv]

use std::fs::File;
use std::io::BufWriter;

use techrace::model::{crossing_times, sample_trajectory};
use techrace::output::{write_trajectory, OutputSpec};
use techrace::scenario::PresetCatalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let preset = args.next().unwrap_or_else(|| "disruptive/baseline/opp".into());
    let out = args.next();

    let params = PresetCatalog::load()?.build_preset(&preset)?;
    let tr = sample_trajectory(&params, 100.0)?;
    let report = crossing_times(&params);
    println!("{preset}: sign changes at {:?}, persistent crossing {:?}", report.sign_changes, report.first_persistent);
    println!("{:>6}{:>10}{:>8}{:>10}{:>10}{:>10}{:>10}", "t", "P", "D", "RAI", "Pr(D)", "hazard", "R(t)");
    for i in (0..tr.len()).filter(|&i| tr.t[i].fract() == 0.0) {
        println!(
            "{:>6.1}{:>10.3}{:>8.1}{:>10.3}{:>10.4}{:>10.4}{:>10.4}",
            tr.t[i], tr.p[i], tr.d[i], tr.rai[i], tr.pr_detect[i], tr.hazard[i], tr.cumulative_risk[i]
        );
    }
    if let Some(path) = out {
        write_trajectory(&mut BufWriter::new(File::create(&path)?), &tr, &OutputSpec::default())?;
        println!("{} samples written to {path}", tr.len());
    }
    Ok(())
}

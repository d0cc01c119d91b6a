//! Uncertainty envelope of one preset over the default ensemble: DET step
//! timing and size plus ceiling, detection floor and opportunism grids.
//!
//!     cargo run --release --example band -- [preset] [out.csv]

use std::fs::File;
use std::io::BufWriter;

use techrace::output::{write_band, OutputSpec};
use techrace::scenario::PresetCatalog;
use techrace::sensitivity::{uncertainty_band, BandSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let preset = args.next().unwrap_or_else(|| "transformative/baseline/no-opp".into());
    let params = PresetCatalog::load()?.build_preset(&preset)?;
    let spec = BandSpec { resolution: 4.0, ..BandSpec::default() };
    let band = uncertainty_band(&params, &spec)?;
    println!("{preset}: {} ensemble members", band.members);
    println!("{:>6}{:>26}{:>26}", "t", "RAI lower/nominal/upper", "R lower/nominal/upper");
    for (i, t) in band.t.iter().enumerate().step_by(4) {
        println!(
            "{t:>6.1}{:>10.2}{:>8.2}{:>8.2}{:>10.4}{:>8.4}{:>8.4}",
            band.rai.lower[i],
            band.rai.nominal[i],
            band.rai.upper[i],
            band.r.lower[i],
            band.r.nominal[i],
            band.r.upper[i]
        );
    }
    if let Some(path) = args.next() {
        write_band(&mut BufWriter::new(File::create(&path)?), &band, &OutputSpec::default())?;
        println!("written to {path}");
    }
    Ok(())
}

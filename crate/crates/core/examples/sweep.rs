//! One-at-a-time sweeps over every sensitivity parameter, with arc
//! elasticities around the base point.
//!
//!     cargo run --example sweep

use techrace::scenario::{PetRegime, PresetCatalog};
use techrace::sensitivity::{arc_elasticity, oat_sweep, rai_shift_sensitivity, SweepGrid, SweepParameter};

fn main() -> techrace::Result<()> {
    let catalog = PresetCatalog::load()?;
    for parameter in SweepParameter::ALL {
        let grid = SweepGrid::robustness(parameter, &catalog)?;
        let surface = oat_sweep(&catalog, &grid)?;
        println!("{parameter}");
        for (i, v) in surface.values.iter().enumerate() {
            let row: Vec<String> = surface.r10[i].iter().map(|r| format!("{r:>8.4}")).collect();
            println!("  {v:>8}{}", row.join(""));
        }
        for regime in PetRegime::ALL {
            let mut base = grid.base.clone();
            base.g_p = catalog.regime_growth(regime);
            let (lo, hi) = (surface.values[0], *surface.values.last().unwrap());
            let e = arc_elasticity(parameter, lo, hi, &base)?;
            println!("  {regime:<16} spread {:.3}  arc elasticity {e:+.3}", surface.spread(regime).unwrap());
        }
        for w in &surface.warnings {
            println!("  warning: {w}");
        }
    }

    let p = catalog.build_preset("disruptive/baseline/no-opp")?;
    println!("one-point RAI shift, Disruptive baseline: {:+.4}", rai_shift_sensitivity(&p, 1.0)?);
    Ok(())
}

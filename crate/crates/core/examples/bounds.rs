//! Two-sided risk bounds for a run that stays a margin δ above the
//! opportunism threshold, against the exact constant-RAI integral.
//!
//!     cargo run --example bounds

use techrace::model::{integrate_risk, risk_bounds, ModelParams, RISK_ABS_TOL};

fn main() -> techrace::Result<()> {
    let mut p = ModelParams::baseline();
    p.eta = 3.0;
    println!("{:>6}{:>10}{:>10}{:>10}{:>12}{:>12}", "δ", "lower", "R", "upper", "ε", "ζ");
    for delta in [5.0, 10.0, 30.0, 60.0, 100.0] {
        let level = p.tau + delta;
        let r = integrate_risk(&p, |_| level, 0.0, p.horizon, &[], RISK_ABS_TOL)?;
        let b = risk_bounds(&p, delta)?;
        println!("{delta:>6}{:>10.4}{r:>10.4}{:>10.4}{:>12.3e}{:>12.3e}", b.lower, b.upper, b.epsilon, b.zeta);
    }
    Ok(())
}

//! Detection probability against RAI for a family of offsets, and the
//! opportunistic hazard curve.
//!
//!     cargo run --example detection_curves

use techrace::model::ModelParams;
use techrace::sensitivity::{detection_theta_curve, hazard_curve, rai_axis};

fn main() -> techrace::Result<()> {
    let axis = rai_axis(-100.0, 100.0, 9);
    let curves = detection_theta_curve(&[-20.0, -10.0, 0.0, 10.0, 20.0], 0.4, 0.10, &axis)?;
    print!("{:>8}", "RAI");
    for c in &curves {
        print!("{:>10}", format!("θ={}", c.theta));
    }
    println!();
    for (i, x) in axis.iter().enumerate() {
        print!("{x:>8.0}");
        for c in &curves {
            print!("{:>10.4}", c.pr[i]);
        }
        println!();
    }
    for c in &curves {
        println!("θ={:>4}: inflection at RAI {:>6.1}, Pr {:.3}", c.theta, c.inflection_rai, c.inflection_pr);
    }

    let mut params = ModelParams::baseline();
    params.eta = 3.0;
    let hazard_axis = rai_axis(0.0, 100.0, 11);
    println!("\nhazard (λ0=0.05, η=3, β=0.1, τ=40)");
    for (x, h) in hazard_axis.iter().zip(hazard_curve(&params, &hazard_axis)) {
        println!("{x:>8.0}{h:>10.4}");
    }
    Ok(())
}

use serde::{Deserialize, Serialize};

use super::curves::{detection_prob, hazard_rate, pet_capability};
use super::params::ModelParams;
use super::risk::{risk_between, undetected_intensity};
use crate::error::{Error, Result};

/// Time-sampled model state, stored column-wise.
///
/// At every jump point (DET step, kappa switch) the grid carries two
/// samples at the same time: the left limit first, then the value at the
/// jump.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub p: Vec<f64>,
    pub d: Vec<f64>,
    pub rai: Vec<f64>,
    pub pr_detect: Vec<f64>,
    pub hazard: Vec<f64>,
    pub integrand: Vec<f64>,
    pub cumulative_risk: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn final_risk(&self) -> f64 {
        self.cumulative_risk.last().copied().unwrap_or(0.0)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Side {
    Left,
    Right,
}

/// Samples the model on a uniform grid with `resolution` points per year,
/// plus both one-sided limits at every jump point.
pub fn sample_trajectory(params: &ModelParams, resolution: f64) -> Result<Trajectory> {
    params.validate()?;
    if !(resolution >= 1.0 && resolution.is_finite()) {
        return Err(Error::Domain(format!("resolution must be >= 1, got {resolution}")));
    }
    let horizon = params.horizon;
    let n = (resolution * horizon).ceil().max(1.0) as usize;
    let mut jumps: Vec<f64> = params.breakpoints().into_iter().filter(|&t| t > 0.0 && t < horizon).collect();
    if params.det_schedule.step_times().any(|s| s == horizon) {
        jumps.push(horizon);
    }

    let mut grid: Vec<(f64, Side)> = (0..=n)
        .map(|i| if i == n { horizon } else { horizon * i as f64 / n as f64 })
        .filter(|t| !jumps.iter().any(|j| (j - t).abs() <= 1e-12 * horizon.max(1.0)))
        .map(|t| (t, Side::Right))
        .collect();
    for &j in &jumps {
        grid.push((j, Side::Left));
        grid.push((j, Side::Right));
    }
    grid.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| (a.1 == Side::Right).cmp(&(b.1 == Side::Right))));

    let mut tr = Trajectory::default();
    let mut acc = 0.0;
    let mut prev_t = 0.0;
    for (t, side) in grid {
        let (d, kappa) = match side {
            Side::Left => (params.det_schedule.capability_before(t), params.kappa_before(t)),
            Side::Right => (params.det_schedule.capability_at(t), params.kappa_at(t)),
        };
        let p = pet_capability(t, params);
        let rai = p - d;
        if t > prev_t {
            acc += risk_between(params, prev_t, t, 0.0, 1e-13)?;
            prev_t = t;
        }
        tr.t.push(t);
        tr.p.push(p);
        tr.d.push(d);
        tr.rai.push(rai);
        tr.pr_detect.push(detection_prob(rai, kappa, params.theta, params.pi0));
        tr.hazard.push(hazard_rate(rai, params.lambda0, params.eta, params.beta, params.tau));
        tr.integrand.push(undetected_intensity(rai, kappa, params));
        tr.cumulative_risk.push(acc);
    }
    Ok(tr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::risk::cumulative_risk;
    use approx::assert_abs_diff_eq;

    #[test]
    fn grid_contains_ends_and_both_limits() {
        let p = ModelParams::baseline();
        let tr = sample_trajectory(&p, 4.0).unwrap();
        assert_eq!(tr.t[0], 0.0);
        assert_eq!(*tr.t.last().unwrap(), 10.0);
        let at3: Vec<usize> = (0..tr.len()).filter(|&i| tr.t[i] == 3.0).collect();
        assert_eq!(at3.len(), 2);
        assert_eq!(tr.d[at3[0]], 50.0);
        assert_eq!(tr.d[at3[1]], 55.0);
        assert!(tr.t.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn columns_are_consistent() {
        let p = ModelParams::baseline();
        let tr = sample_trajectory(&p, 10.0).unwrap();
        for i in 0..tr.len() {
            assert_eq!(tr.rai[i], tr.p[i] - tr.d[i]);
            assert!(tr.pr_detect[i] >= p.pi0 && tr.pr_detect[i] <= 1.0);
            assert!(tr.hazard[i] >= p.lambda0 && tr.hazard[i] <= p.lambda0 * (1.0 + p.eta));
        }
        assert!(tr.cumulative_risk.windows(2).all(|w| w[1] >= w[0]));
        let last = tr.len() - 1;
        assert_abs_diff_eq!(tr.rai[last], 20.93, epsilon = 0.01);
        assert_abs_diff_eq!(tr.final_risk(), cumulative_risk(&p).unwrap(), epsilon = 1e-6);
    }

    #[test]
    fn rejects_low_resolution() {
        assert!(sample_trajectory(&ModelParams::baseline(), 0.5).is_err());
    }
}

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{detection_prob, hazard_rate, ModelParams};

/// Detection probability as a function of RAI for one intercept `theta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionCurve {
    pub theta: f64,
    /// RAI where the logistic part is at its midpoint, `-theta / kappa`.
    pub inflection_rai: f64,
    /// `pi0 + (1 - pi0) / 2`.
    pub inflection_pr: f64,
    pub rai: Vec<f64>,
    pub pr: Vec<f64>,
}

/// Evenly spaced RAI values, both ends included.
pub fn rai_axis(from: f64, to: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![from],
        n => (0..n).map(|i| from + (to - from) * i as f64 / (n - 1) as f64).collect(),
    }
}

pub fn detection_theta_curve(theta_values: &[f64], kappa: f64, pi0: f64, rai: &[f64]) -> Result<Vec<DetectionCurve>> {
    if !(kappa > 0.0) {
        return Err(Error::Domain(format!("kappa must be > 0, got {kappa}")));
    }
    if !(0.0..1.0).contains(&pi0) {
        return Err(Error::Domain(format!("pi0 must lie in [0, 1), got {pi0}")));
    }
    Ok(theta_values
        .iter()
        .map(|&theta| DetectionCurve {
            theta,
            // Adding zero turns -0.0 (theta = 0) into 0.0.
            inflection_rai: -theta / kappa + 0.0,
            inflection_pr: detection_prob(-theta / kappa, kappa, theta, pi0),
            rai: rai.to_vec(),
            pr: rai.iter().map(|&r| detection_prob(r, kappa, theta, pi0)).collect(),
        })
        .collect())
}

/// Hazard against RAI for the given parameters.
pub fn hazard_curve(params: &ModelParams, rai: &[f64]) -> Vec<f64> {
    rai.iter().map(|&r| hazard_rate(r, params.lambda0, params.eta, params.beta, params.tau)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inflections_move_with_theta() {
        let curves = detection_theta_curve(&[-20.0, 0.0, 20.0], 0.4, 0.10, &rai_axis(-100.0, 100.0, 201)).unwrap();
        let at: Vec<f64> = curves.iter().map(|c| c.inflection_rai).collect();
        assert!((at[0] - 50.0).abs() < 1e-12);
        assert_eq!(at[1], 0.0);
        assert!((at[2] + 50.0).abs() < 1e-12);
        for c in &curves {
            assert!((c.inflection_pr - 0.55).abs() < 1e-15);
            assert_eq!(c.pr.len(), 201);
            assert!(c.pr.windows(2).all(|w| w[1] <= w[0]));
        }
    }

    #[test]
    fn rejects_bad_slope() {
        assert!(detection_theta_curve(&[0.0], 0.0, 0.1, &[0.0]).is_err());
    }

    #[test]
    fn axis_endpoints() {
        let a = rai_axis(-2.0, 2.0, 5);
        assert_eq!(a, vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        assert!(rai_axis(0.0, 1.0, 0).is_empty());
    }

    #[test]
    fn hazard_curve_ceiling() {
        let mut p = ModelParams::baseline();
        p.eta = 3.0;
        let h = hazard_curve(&p, &[-100.0, 40.0, 400.0]);
        assert!((h[1] - 0.125).abs() < 1e-15);
        assert!((h[2] - 0.20).abs() < 1e-12);
    }
}

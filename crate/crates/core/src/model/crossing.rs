//! Times at which the RAI changes sign.

use serde::{Deserialize, Serialize};

use super::curves::pet_capability;
use super::params::ModelParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossingReport {
    /// Times where RAI switches between negative and non-negative, sorted.
    pub sign_changes: Vec<f64>,
    /// Earliest time after which RAI stays non-negative through the horizon.
    pub first_persistent: Option<f64>,
}

/// Time at which the PET logistic reaches `level`, if it ever does.
fn time_to_reach(level: f64, params: &ModelParams) -> Option<f64> {
    if level <= params.p0 {
        return Some(0.0);
    }
    if level >= params.p_max {
        return None;
    }
    let ratio = (params.p_max / params.p0 - 1.0) * level / (params.p_max - level);
    Some(ratio.ln() / params.g_p)
}

/// Scans each constant-DET segment for the (unique) PET crossing, and each
/// step for the downward jump it causes.
pub fn crossing_times(params: &ModelParams) -> CrossingReport {
    let horizon = params.horizon;
    let sched = &params.det_schedule;
    let mut edges: Vec<f64> = vec![0.0];
    edges.extend(sched.step_times().filter(|&t| t > 0.0 && t <= horizon));
    edges.push(horizon);

    let mut sign_changes = Vec::new();
    let mut nonneg = pet_capability(0.0, params) >= sched.capability_at(0.0);

    for (i, w) in edges.windows(2).enumerate() {
        let (start, end) = (w[0], w[1]);
        let last = i + 2 == edges.len();
        if i > 0 {
            let now = pet_capability(start, params) >= sched.capability_at(start);
            if now != nonneg {
                sign_changes.push(start);
                nonneg = now;
            }
        }
        if !nonneg {
            let level = sched.capability_at(start);
            if let Some(root) = time_to_reach(level, params) {
                let inside = root > start && (root < end || (last && root <= end));
                if inside {
                    sign_changes.push(root);
                    nonneg = true;
                }
            }
        }
    }

    let first_persistent = nonneg.then(|| sign_changes.last().copied().unwrap_or(0.0));
    CrossingReport { sign_changes, first_persistent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::params::DetSchedule;
    use approx::assert_abs_diff_eq;

    #[test]
    fn limited_baseline_crosses_once() {
        let r = crossing_times(&ModelParams::baseline());
        let expected = (275.0f64 / 65.0).ln() / 0.23;
        assert_eq!(r.sign_changes.len(), 1);
        assert_abs_diff_eq!(r.first_persistent.unwrap(), expected, epsilon = 1e-12);
        assert_abs_diff_eq!(expected, 6.271, epsilon = 1e-3);
    }

    #[test]
    fn moonshot_never_crosses() {
        let mut p = ModelParams::baseline();
        p.det_schedule = DetSchedule::new(50.0, [(1.0, 12.0), (3.0, 10.0), (6.0, 10.0)]).unwrap();
        let r = crossing_times(&p);
        assert!(r.sign_changes.is_empty());
        assert_eq!(r.first_persistent, None);
    }

    #[test]
    fn equal_start_is_persistent_from_zero() {
        let mut p = ModelParams::baseline();
        p.det_schedule = DetSchedule::new(20.0, []).unwrap();
        let r = crossing_times(&p);
        assert_eq!(r.first_persistent, Some(0.0));
        assert!(r.sign_changes.is_empty());
    }

    #[test]
    fn large_step_produces_multiple_crossings() {
        // Fast PET overtakes D = 50 early, a big upgrade at t = 2 pushes it
        // back behind, and it overtakes again later.
        let mut p = ModelParams::baseline();
        p.g_p = 1.0;
        p.det_schedule = DetSchedule::new(50.0, [(2.0, 30.0)]).unwrap();
        let r = crossing_times(&p);
        assert_eq!(r.sign_changes.len(), 3);
        assert_eq!(r.sign_changes[1], 2.0);
        let t1 = r.sign_changes[0];
        let t3 = r.sign_changes[2];
        assert_abs_diff_eq!(pet_capability(t1, &p), 50.0, epsilon = 1e-9);
        assert_abs_diff_eq!(pet_capability(t3, &p), 80.0, epsilon = 1e-9);
        assert_eq!(r.first_persistent, Some(t3));
    }

    #[test]
    fn unreachable_detector_level() {
        let mut p = ModelParams::baseline();
        p.det_schedule = DetSchedule::new(130.0, []).unwrap();
        assert_eq!(crossing_times(&p).first_persistent, None);
    }
}

//! Independent oracles: golden risk values from an external adaptive
//! integrator, a composite Simpson rule written here from the pointwise
//! formulas, and a bisection root finder for RAI crossings.

use approx::assert_abs_diff_eq;
use techrace::model::{
    breakout_prob, crossing_times, cumulative_risk, detection_prob, hazard_rate, pet_capability, sample_trajectory,
    ModelParams,
};
use techrace::scenario::{scenario_table, PresetCatalog, TableId};

/// R(10) per preset from scipy `quad` (epsabs 1e-12) split at DET steps.
const GOLDEN: [(&str, f64); 12] = [
    ("limited/baseline/no-opp", 0.161733035312),
    ("limited/moonshot/no-opp", 0.003041211680),
    ("limited/baseline/opp", 0.187724137410),
    ("limited/moonshot/opp", 0.003155325985),
    ("disruptive/baseline/no-opp", 0.253887142074),
    ("disruptive/moonshot/no-opp", 0.128676480850),
    ("disruptive/baseline/opp", 0.417475042743),
    ("disruptive/moonshot/opp", 0.149813180431),
    ("transformative/baseline/no-opp", 0.401940895583),
    ("transformative/moonshot/no-opp", 0.387083191242),
    ("transformative/baseline/opp", 1.340882871922),
    ("transformative/moonshot/opp", 0.918787057946),
];

fn integrand(t: f64, p: &ModelParams) -> f64 {
    let d = p.d0() + p.det_schedule.steps.iter().filter(|s| s.time <= t).map(|s| s.delta).sum::<f64>();
    let rai = pet_capability(t, p) - d;
    let kappa = match p.early_kappa {
        Some(ek) if t < ek.until => ek.kappa,
        _ => p.kappa,
    };
    hazard_rate(rai, p.lambda0, p.eta, p.beta, p.tau) * (1.0 - detection_prob(rai, kappa, p.theta, p.pi0))
}

fn simpson(p: &ModelParams, panels: usize) -> f64 {
    let mut cuts: Vec<f64> = vec![0.0, p.horizon];
    cuts.extend(p.det_schedule.steps.iter().map(|s| s.time).filter(|&t| t > 0.0 && t < p.horizon));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let h = (b - a) / panels as f64;
        // Sample just inside the right end so the left-continuous limit is used.
        let f = |x: f64| integrand(if x >= b { b - 1e-13 } else { x }, p);
        let mut s = f(a) + f(b);
        for i in 1..panels {
            s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        total += s * h / 3.0;
    }
    total
}

#[test]
fn presets_match_external_integrator() {
    let catalog = PresetCatalog::shipped();
    for (name, want) in GOLDEN {
        let r = cumulative_risk(&catalog.build_preset(name).unwrap()).unwrap();
        assert_abs_diff_eq!(r, want, epsilon = 1e-9);
    }
}

#[test]
fn presets_match_composite_simpson() {
    let catalog = PresetCatalog::shipped();
    for name in catalog.names() {
        let p = catalog.build_preset(&name).unwrap();
        let r = cumulative_risk(&p).unwrap();
        assert_abs_diff_eq!(r, simpson(&p, 4000), epsilon = 1e-9);
    }
}

#[test]
fn early_kappa_variant_matches_simpson() {
    let mut p = PresetCatalog::shipped().build_preset("disruptive/moonshot/opp").unwrap();
    p.early_kappa = Some(techrace::model::EarlyKappa { until: 1.0, kappa: 0.4 });
    assert_abs_diff_eq!(cumulative_risk(&p).unwrap(), simpson(&p, 4000), epsilon = 1e-9);
}

fn rai_at(t: f64, p: &ModelParams) -> f64 {
    pet_capability(t, p) - p.det_schedule.capability_at(t)
}

/// Last sign change from negative to non-negative found by grid scan and
/// bisection, provided RAI stays non-negative afterwards.
fn bisection_crossing(p: &ModelParams) -> Option<f64> {
    let n = 100_000;
    let grid: Vec<f64> = (0..=n).map(|i| p.horizon * i as f64 / n as f64).collect();
    let last_neg = grid.iter().rposition(|&t| rai_at(t, p) < 0.0)?;
    if last_neg == n {
        return None;
    }
    let (mut lo, mut hi) = (grid[last_neg], grid[last_neg + 1]);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if rai_at(mid, p) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(hi)
}

#[test]
fn crossings_match_bisection() {
    let catalog = PresetCatalog::shipped();
    for name in catalog.names() {
        let p = catalog.build_preset(&name).unwrap();
        let closed = crossing_times(&p).first_persistent;
        match (closed, bisection_crossing(&p)) {
            (Some(a), Some(b)) => assert_abs_diff_eq!(a, b, epsilon = 1e-9),
            (a, b) => assert_eq!(a, b, "{name}"),
        }
    }
}

#[test]
fn walkthrough_crossing_is_closed_form() {
    let p = PresetCatalog::shipped().build_preset("limited/baseline/no-opp").unwrap();
    let t = crossing_times(&p).first_persistent.unwrap();
    assert_abs_diff_eq!(t, (275.0f64 / 65.0).ln() / 0.23, epsilon = 1e-12);
}

#[test]
fn trajectory_ends_at_cumulative_risk() {
    let catalog = PresetCatalog::shipped();
    for name in catalog.names() {
        let p = catalog.build_preset(&name).unwrap();
        let tr = sample_trajectory(&p, 50.0).unwrap();
        assert_abs_diff_eq!(tr.final_risk(), cumulative_risk(&p).unwrap(), epsilon = 1e-9);
        assert!(tr.cumulative_risk.windows(2).all(|w| w[1] >= w[0] - 1e-15));
        assert_eq!(tr.t[0], 0.0);
        assert_eq!(*tr.t.last().unwrap(), p.horizon);
    }
}

#[test]
fn tables_share_risk_values() {
    let catalog = PresetCatalog::shipped();
    let t4 = scenario_table(&catalog, TableId::Table4).unwrap();
    let t5 = scenario_table(&catalog, TableId::Table5).unwrap();
    assert_eq!(t4.rows.len(), 12);
    assert_eq!(t5.rows.len(), 12);
    for row in &t4.rows {
        let other = t5.row(&row.summary.scenario).unwrap();
        assert_eq!(row.summary.r10.to_bits(), other.r10.to_bits());
        assert_eq!(row.summary.p10, breakout_prob(row.summary.r10).unwrap());
    }
}

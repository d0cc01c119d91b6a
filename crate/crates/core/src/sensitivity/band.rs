use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sweep::SweepParameter;
use crate::error::{Error, Result};
use crate::model::{cumulative_risk_series, pet_capability, ModelParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamRange {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

/// Ensemble definition for an uncertainty band: the Cartesian product of
/// every listed variation. An empty list leaves that dimension nominal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandSpec {
    /// Years added to every DET step time.
    pub step_time_offsets: Vec<f64>,
    /// Factors applied to every DET step magnitude.
    pub step_magnitude_scales: Vec<f64>,
    pub parameters: Vec<ParamRange>,
    /// Samples per year.
    pub resolution: f64,
}

impl Default for BandSpec {
    fn default() -> Self {
        let grid = |parameter: SweepParameter| ParamRange { parameter, values: parameter.default_values() };
        Self {
            step_time_offsets: vec![-1.0, 0.0, 1.0],
            step_magnitude_scales: vec![0.8, 1.0, 1.2],
            parameters: vec![grid(SweepParameter::PMax), grid(SweepParameter::Pi0), grid(SweepParameter::Eta)],
            resolution: 20.0,
        }
    }
}

impl BandSpec {
    /// A spec with no variation at all.
    pub fn nominal(resolution: f64) -> Self {
        Self { step_time_offsets: vec![], step_magnitude_scales: vec![], parameters: vec![], resolution }
    }

    /// All ensemble members; members with invalid parameters (for example a
    /// step shifted to t <= 0) are dropped.
    pub fn members(&self, base: &ModelParams) -> Vec<ModelParams> {
        let or_nominal = |v: &[f64], nominal: f64| if v.is_empty() { vec![nominal] } else { v.to_vec() };
        let mut members = Vec::new();
        for &offset in &or_nominal(&self.step_time_offsets, 0.0) {
            for &scale in &or_nominal(&self.step_magnitude_scales, 1.0) {
                let mut p = base.clone();
                for s in &mut p.det_schedule.steps {
                    s.time += offset;
                    s.delta *= scale;
                }
                members.push(p);
            }
        }
        for range in &self.parameters {
            if range.values.is_empty() {
                continue;
            }
            members = members
                .into_iter()
                .flat_map(|m| range.values.iter().map(move |&v| range.parameter.with(&m, v)))
                .collect();
        }
        members.retain(|m| m.validate().is_ok());
        members
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub lower: Vec<f64>,
    pub nominal: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Envelope {
    fn from_nominal(nominal: Vec<f64>) -> Self {
        Self { lower: nominal.clone(), upper: nominal.clone(), nominal }
    }

    fn widen(&mut self, series: &[f64]) {
        for (i, &v) in series.iter().enumerate() {
            self.lower[i] = self.lower[i].min(v);
            self.upper[i] = self.upper[i].max(v);
        }
    }

    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub t: Vec<f64>,
    pub p: Envelope,
    pub d: Envelope,
    pub rai: Envelope,
    pub r: Envelope,
    pub members: usize,
}

struct Series {
    p: Vec<f64>,
    d: Vec<f64>,
    rai: Vec<f64>,
    r: Vec<f64>,
}

fn evaluate(params: &ModelParams, t: &[f64]) -> Result<Series> {
    let p: Vec<f64> = t.iter().map(|&x| pet_capability(x, params)).collect();
    let d: Vec<f64> = t.iter().map(|&x| params.det_schedule.capability_at(x)).collect();
    let rai = p.iter().zip(&d).map(|(a, b)| a - b).collect();
    Ok(Series { p, d, rai, r: cumulative_risk_series(params, t)? })
}

/// Pointwise min/max envelopes of P, D, RAI and running risk over the
/// ensemble, on a uniform grid. The nominal run is always part of the
/// envelope.
pub fn uncertainty_band(params: &ModelParams, band: &BandSpec) -> Result<Band> {
    params.validate()?;
    if !(band.resolution >= 1.0 && band.resolution.is_finite()) {
        return Err(Error::Domain(format!("resolution must be >= 1, got {}", band.resolution)));
    }
    let n = (band.resolution * params.horizon).ceil() as usize;
    let t: Vec<f64> = (0..=n).map(|i| params.horizon * i as f64 / n as f64).collect();

    let nominal = evaluate(params, &t)?;
    let members = band.members(params);
    let runs: Vec<Series> = members.par_iter().map(|m| evaluate(m, &t)).collect::<Result<_>>()?;

    let mut out = Band {
        p: Envelope::from_nominal(nominal.p),
        d: Envelope::from_nominal(nominal.d),
        rai: Envelope::from_nominal(nominal.rai),
        r: Envelope::from_nominal(nominal.r),
        t,
        members: members.len(),
    };
    for s in &runs {
        out.p.widen(&s.p);
        out.d.widen(&s.d);
        out.rai.widen(&s.rai);
        out.r.widen(&s.r);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_variation_gives_zero_width() {
        let p = ModelParams::baseline();
        let b = uncertainty_band(&p, &BandSpec::nominal(5.0)).unwrap();
        assert_eq!(b.members, 1);
        for env in [&b.p, &b.d, &b.rai, &b.r] {
            assert!((0..b.t.len()).all(|i| env.width(i) == 0.0));
        }
    }

    #[test]
    fn nominal_inside_default_band() {
        let mut p = ModelParams::baseline();
        p.eta = 3.0;
        let b = uncertainty_band(&p, &BandSpec::default()).unwrap();
        assert_eq!(b.members, 9 * 5 * 4 * 5);
        for env in [&b.p, &b.d, &b.rai, &b.r] {
            for i in 0..b.t.len() {
                assert!(env.lower[i] <= env.nominal[i] && env.nominal[i] <= env.upper[i]);
            }
        }
        let last = b.t.len() - 1;
        assert!(b.rai.width(last) >= b.rai.width(0));
        assert!(b.rai.width(last) > 0.0);
    }

    #[test]
    fn shifted_steps_before_zero_are_dropped() {
        let p = crate::scenario::PresetCatalog::shipped().build_preset("limited/moonshot/no-opp").unwrap();
        let spec = BandSpec { step_time_offsets: vec![-1.0, 0.0], ..BandSpec::nominal(5.0) };
        assert_eq!(spec.members(&p).len(), 1);
    }
}

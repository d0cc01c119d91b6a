//! One-at-a-time sensitivity analysis, elasticities, detection-curve
//! families and uncertainty bands.

mod band;
mod curves;
mod sweep;

pub use band::{uncertainty_band, Band, BandSpec, Envelope, ParamRange};
pub use curves::{detection_theta_curve, hazard_curve, rai_axis, DetectionCurve};
pub use sweep::{
    arc_elasticity, oat_sweep, rai_shift_sensitivity, robustness_base, SweepGrid, SweepParameter, SweepPoint,
    SweepSurface,
};

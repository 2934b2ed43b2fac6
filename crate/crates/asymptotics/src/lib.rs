//! The objects of the asymptotic expansion u = Γ^λ·c_f + R: the mean-force
//! coefficient, the profile Γ^λ·c_f, the linear far field evaluated outside the
//! forcing support, the remainder, decay fits and wake scans.

pub mod error;
pub mod expansion;
pub mod farfield;
pub mod fit;
pub mod ray;
pub mod source;
pub mod wake;

pub use error::AsymptoticsError;
pub use expansion::{expand, Expansion, ExpansionReport, ScanPlan, ScanRow, OSCILLATORY_MIN_ALPHA, REMAINDER_MIN_ALPHA};
pub use farfield::{
    evaluate_points, farfield_linear, mean_force, mean_force_spec, profile, remainder, FarField, FarFieldPoint,
};
pub use fit::{fit_decay, geometric_radii, DecayFit};
pub use ray::{ray_slice, ray_slice_directed, RayRule};
pub use source::{BallRule, BumpQuadrature};
pub use wake::{downstream_axis, wake_direction, wake_scan};

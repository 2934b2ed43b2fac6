use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::field::{Representation, TPField};
use crate::lattice::Lattice;
use crate::reduce::det_sum;

/// Spatial integration region, centred at the origin.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Region {
    FullBox,
    /// Closed ball |x| <= R.
    Ball(f64),
    /// Shell R1 < |x| <= R2.
    Shell(f64, f64),
}

impl Region {
    pub fn contains(&self, x: [f64; 3]) -> bool {
        let r = norm3(x);
        match *self {
            Region::FullBox => true,
            Region::Ball(rr) => r <= rr,
            Region::Shell(r1, r2) => r > r1 && r <= r2,
        }
    }
}

pub fn norm3(x: [f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

/// (1/T)∫dt ∫_region |f|^r dx as a Riemann sum over lattice points whose distance from
/// the origin exceeds `exclude_radius` (pass a negative value to keep every point).
/// |f| is the Euclidean norm over components.
pub fn lp_integral(
    field: &TPField,
    r: f64,
    region: Region,
    exclude_radius: f64,
) -> Result<f64, CoreError> {
    field.expect(Representation::Physical)?;
    if !(r >= 1.0) {
        return Err(CoreError::InvalidExponent(r));
    }
    let lat = field.lattice();
    let ns = lat.n_space();
    let nt = lat.n_time();
    let c = field.components;
    let mask: Vec<bool> = (0..ns)
        .map(|p| {
            let x = lat.point(p);
            region.contains(x) && norm3(x) > exclude_radius
        })
        .collect();
    let total = det_sum(nt * ns, |i| {
        let p = i % ns;
        if !mask[p] {
            return 0.0;
        }
        let mut s = 0.0;
        for comp in 0..c {
            s += field.data[i * c + comp].norm_sqr();
        }
        s.sqrt().powf(r)
    });
    Ok(total * lat.weight / nt as f64)
}

/// Discrete L^r norm with the time-averaged normalization (1/T)∫dt ∫dx.
pub fn lp_norm(field: &TPField, r: f64, region: Region) -> Result<f64, CoreError> {
    Ok(lp_integral(field, r, region, -1.0)?.powf(1.0 / r))
}

/// (2L)³ Σ |û|², which equals lp_norm(f, 2, FullBox)² under the averaging convention.
pub fn parseval_sum(field: &TPField) -> Result<f64, CoreError> {
    field.expect(Representation::Spectral)?;
    let lat: Lattice = field.lattice();
    Ok(lat.box_measure() * det_sum(field.data.len(), |i| field.data[i].norm_sqr()))
}

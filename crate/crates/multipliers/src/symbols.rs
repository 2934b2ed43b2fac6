//! Lattice symbols of the multiplier operators, precomputed once per parameter set.
//!
//! Differentiation uses the derivative wavevector (axis Nyquist components zeroed),
//! while the Laplacian uses the true |ξ|², so that every operator below is consistent
//! with the divergence measured by [`tpns_core::divergence_max`].

use num_complex::Complex64;
use rayon::prelude::*;

use tpns_core::{build_lattice, Lattice, Params};

use crate::error::MultiplierError;

/// Which multiplier a [`SymbolGrid`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolKind {
    /// δ(k): keeps the steady plane.
    ProjSteady,
    /// 1 - δ(k): keeps the oscillatory planes.
    ProjOsc,
    /// I - ξ⊗ξ/|ξ|² (identity at ξ = 0).
    Helmholtz,
    /// Denominator |ξ|² + i((2π/T)k - λξ₁) of the oscillatory inverse.
    OscInverse,
    /// Denominator |ξ|² - iλξ₁ of the steady Oseen inverse.
    SteadyOseenInverse,
    /// Vector -iξ/|ξ|² mapping a forcing coefficient to a pressure coefficient.
    Pressure,
}

/// Stored symbol values.
#[derive(Clone, Debug, PartialEq)]
pub enum SymbolValues {
    /// One real factor per temporal slot.
    Temporal(Vec<f64>),
    /// One complex value per (temporal slot, spatial slot), index it·n³ + p.
    Modal(Vec<Complex64>),
    /// One complex value per spatial slot.
    Spatial(Vec<Complex64>),
    /// Symmetric real 3×3 value per spatial slot, entries (00, 01, 02, 11, 12, 22).
    Projector(Vec<[f64; 6]>),
    /// Complex 3-vector per spatial slot.
    Vector(Vec<[Complex64; 3]>),
}

/// A multiplier symbol sampled on the lattice of one parameter set. Immutable after
/// construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolGrid {
    pub kind: SymbolKind,
    pub params: Params,
    pub values: SymbolValues,
}

/// Orthogonal projector I - ξ⊗ξ/|ξ|² for a (derivative) wavevector; identity at ξ = 0.
pub fn helmholtz_symbol(xi: [f64; 3]) -> [[f64; 3]; 3] {
    let k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    let mut out = [[0.0; 3]; 3];
    for j in 0..3 {
        for l in 0..3 {
            let d = if j == l { 1.0 } else { 0.0 };
            out[j][l] = if k2 > 0.0 { d - xi[j] * xi[l] / k2 } else { d };
        }
    }
    out
}

/// |ξ|² + i((2π/T)k - λξ₁) at temporal mode k and spatial slot p.
pub fn osc_denominator(lat: &Lattice, params: &Params, k: i64, p: usize) -> Complex64 {
    let xi = lat.xi(p);
    let xd = lat.deriv_xi(p);
    let k2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    Complex64::new(k2, params.omega() * k as f64 - params.lambda * xd[0])
}

/// Symmetric entry order of [`SymbolValues::Projector`].
pub const SYM: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

impl SymbolGrid {
    pub fn new(kind: SymbolKind, params: &Params) -> Result<SymbolGrid, MultiplierError> {
        let lat = build_lattice(params)?;
        let ns = lat.n_space();
        let nt = lat.n_time();
        let values = match kind {
            SymbolKind::ProjSteady | SymbolKind::ProjOsc => SymbolValues::Temporal(
                (0..nt)
                    .map(|it| {
                        let steady = lat.temporal_mode(it) == 0;
                        if steady == (kind == SymbolKind::ProjSteady) {
                            1.0
                        } else {
                            0.0
                        }
                    })
                    .collect(),
            ),
            SymbolKind::Helmholtz => SymbolValues::Projector(
                (0..ns)
                    .into_par_iter()
                    .map(|p| {
                        let m = helmholtz_symbol(lat.deriv_xi(p));
                        SYM.map(|(j, l)| m[j][l])
                    })
                    .collect(),
            ),
            SymbolKind::OscInverse => {
                let vals: Vec<Complex64> = (0..nt * ns)
                    .into_par_iter()
                    .map(|i| osc_denominator(&lat, params, lat.temporal_mode(i / ns), i % ns))
                    .collect();
                for (i, d) in vals.iter().enumerate() {
                    let k = lat.temporal_mode(i / ns);
                    if k != 0 && *d == Complex64::default() {
                        return Err(MultiplierError::ZeroDenominator { k, p: i % ns });
                    }
                }
                SymbolValues::Modal(vals)
            }
            SymbolKind::SteadyOseenInverse => SymbolValues::Spatial(
                (0..ns)
                    .into_par_iter()
                    .map(|p| osc_denominator(&lat, params, 0, p))
                    .collect(),
            ),
            SymbolKind::Pressure => SymbolValues::Vector(
                (0..ns)
                    .into_par_iter()
                    .map(|p| {
                        let xd = lat.deriv_xi(p);
                        let k2 = xd[0] * xd[0] + xd[1] * xd[1] + xd[2] * xd[2];
                        if k2 > 0.0 {
                            xd.map(|v| Complex64::new(0.0, -v / k2))
                        } else {
                            [Complex64::default(); 3]
                        }
                    })
                    .collect(),
            ),
        };
        Ok(SymbolGrid {
            kind,
            params: params.clone(),
            values,
        })
    }

    /// Smallest |denominator| over all oscillatory modes (OscInverse) or over ξ ≠ 0
    /// (SteadyOseenInverse); `None` for the other kinds.
    pub fn min_denominator(&self) -> Option<f64> {
        let lat = build_lattice(&self.params).ok()?;
        let ns = lat.n_space();
        match (&self.kind, &self.values) {
            (SymbolKind::OscInverse, SymbolValues::Modal(v)) => Some(
                v.iter()
                    .enumerate()
                    .filter(|(i, _)| lat.temporal_mode(i / ns) != 0)
                    .map(|(_, d)| d.norm())
                    .fold(f64::INFINITY, f64::min),
            ),
            (SymbolKind::SteadyOseenInverse, SymbolValues::Spatial(v)) => Some(
                v.iter()
                    .skip(1)
                    .map(|d| d.norm())
                    .fold(f64::INFINITY, f64::min),
            ),
            _ => None,
        }
    }

    /// Stored complex value at (temporal mode k, spatial slot p) for the modal kind.
    pub fn modal_value(&self, k: i64, p: usize) -> Option<Complex64> {
        let SymbolValues::Modal(v) = &self.values else {
            return None;
        };
        let lat = build_lattice(&self.params).ok()?;
        Some(v[lat.temporal_index(k) * lat.n_space() + p])
    }
}

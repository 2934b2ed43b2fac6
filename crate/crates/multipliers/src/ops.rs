//! Application of the multiplier symbols to spectral fields. Every operator is
//! diagonal in (k, ξ), so applications parallelize over modes.

use num_complex::Complex64;
use rayon::prelude::*;

use tpns_core::{build_lattice, CoreError, Lattice, Params, Representation, TPField};

use crate::error::MultiplierError;
use crate::symbols::{SymbolGrid, SymbolKind, SymbolValues, SYM};

/// Time projection selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    Steady,
    Oscillatory,
}

/// All symbols of one parameter set, built once and shared read-only.
#[derive(Clone, Debug)]
pub struct Multipliers {
    pub params: Params,
    pub lattice: Lattice,
    helmholtz: Vec<[f64; 6]>,
    osc: Vec<Complex64>,
    steady: Vec<Complex64>,
    pressure: Vec<[Complex64; 3]>,
}

fn check_params(field: &TPField, params: &Params) -> Result<(), CoreError> {
    if &field.params != params {
        return Err(CoreError::ParamsMismatch);
    }
    Ok(())
}

impl Multipliers {
    pub fn new(params: &Params) -> Result<Multipliers, MultiplierError> {
        let lattice = build_lattice(params)?;
        let SymbolValues::Projector(helmholtz) = SymbolGrid::new(SymbolKind::Helmholtz, params)?.values else {
            unreachable!("helmholtz symbol is a projector grid")
        };
        let SymbolValues::Modal(osc) = SymbolGrid::new(SymbolKind::OscInverse, params)?.values else {
            unreachable!("oscillatory inverse symbol is modal")
        };
        let SymbolValues::Spatial(steady) = SymbolGrid::new(SymbolKind::SteadyOseenInverse, params)?.values else {
            unreachable!("steady inverse symbol is spatial")
        };
        let SymbolValues::Vector(pressure) = SymbolGrid::new(SymbolKind::Pressure, params)?.values else {
            unreachable!("pressure symbol is a vector grid")
        };
        Ok(Multipliers {
            params: params.clone(),
            lattice,
            helmholtz,
            osc,
            steady,
            pressure,
        })
    }

    fn check(&self, field: &TPField, comps: Option<usize>) -> Result<(), MultiplierError> {
        field.expect(Representation::Spectral)?;
        if let Some(c) = comps {
            field.expect_components(c)?;
        }
        check_params(field, &self.params)?;
        Ok(())
    }

    /// Keeps the steady plane (k = 0) or the oscillatory planes (k ≠ 0).
    pub fn project(&self, field: &TPField, which: Projection) -> Result<TPField, MultiplierError> {
        self.check(field, None)?;
        let mut out = field.clone();
        let lat = &self.lattice;
        let plane = lat.n_space() * field.components;
        out.data.par_chunks_mut(plane).enumerate().for_each(|(it, chunk)| {
            let steady = lat.temporal_mode(it) == 0;
            if steady != (which == Projection::Steady) {
                chunk.iter_mut().for_each(|v| *v = Complex64::default());
            }
        });
        Ok(out)
    }

    /// Applies I - ξ⊗ξ/|ξ|² at every ξ ≠ 0; ξ = 0 coefficients are left unchanged.
    pub fn helmholtz(&self, field: &TPField) -> Result<TPField, MultiplierError> {
        self.check(field, Some(3))?;
        let ns = self.lattice.n_space();
        let mut out = field.clone();
        out.data.par_chunks_mut(3).enumerate().for_each(|(i, v)| {
            let m = &self.helmholtz[i % ns];
            let mut full = [[0.0; 3]; 3];
            for (e, &(j, l)) in SYM.iter().enumerate() {
                full[j][l] = m[e];
                full[l][j] = m[e];
            }
            let u = [v[0], v[1], v[2]];
            for j in 0..3 {
                v[j] = u[0] * full[j][0] + u[1] * full[j][1] + u[2] * full[j][2];
            }
        });
        Ok(out)
    }

    /// Multiplies by (1 - δ(k))/(|ξ|² + i((2π/T)k - λξ₁)).
    pub fn apply_osc_inverse(&self, field: &TPField) -> Result<TPField, MultiplierError> {
        self.check(field, None)?;
        let c = field.components;
        let lat = &self.lattice;
        let ns = lat.n_space();
        let mut out = field.clone();
        out.data.par_chunks_mut(c).enumerate().for_each(|(i, v)| {
            if lat.temporal_mode(i / ns) == 0 {
                v.iter_mut().for_each(|x| *x = Complex64::default());
            } else {
                let d = self.osc[i];
                v.iter_mut().for_each(|x| *x /= d);
            }
        });
        Ok(out)
    }

    /// Steady Oseen inverse on the k = 0 plane: Helmholtz projection followed by
    /// division by |ξ|² - iλξ₁; the ξ = 0 coefficient and all k ≠ 0 planes are zero.
    pub fn apply_steady_oseen_inverse(&self, field: &TPField) -> Result<TPField, MultiplierError> {
        self.check(field, Some(3))?;
        let steady = self.project(field, Projection::Steady)?;
        let mut out = self.helmholtz(&steady)?;
        let lat = &self.lattice;
        let ns = lat.n_space();
        let it0 = lat.temporal_index(0);
        let plane = &mut out.data[it0 * ns * 3..(it0 + 1) * ns * 3];
        plane.par_chunks_mut(3).enumerate().for_each(|(p, v)| {
            if p == 0 {
                v.iter_mut().for_each(|x| *x = Complex64::default());
            } else {
                let d = self.steady[p];
                v.iter_mut().for_each(|x| *x /= d);
            }
        });
        Ok(out)
    }

    /// Pressure p̂ = -i ξ·ĝ/|ξ|² (zero at ξ = 0) solving ∇p = (I - helmholtz) g.
    pub fn recover_pressure(&self, g: &TPField) -> Result<TPField, MultiplierError> {
        self.check(g, Some(3))?;
        let ns = self.lattice.n_space();
        let mut out = TPField::zeros(&self.params, 1, Representation::Spectral)?;
        out.data.par_iter_mut().enumerate().for_each(|(i, o)| {
            let s = &self.pressure[i % ns];
            let v = &g.data[3 * i..3 * i + 3];
            *o = s[0] * v[0] + s[1] * v[1] + s[2] * v[2];
        });
        Ok(out)
    }

    /// Spectral gradient iξ p̂ of a scalar field.
    pub fn gradient(&self, p: &TPField) -> Result<TPField, MultiplierError> {
        self.check(p, Some(1))?;
        let lat = &self.lattice;
        let ns = lat.n_space();
        let mut out = TPField::zeros(&self.params, 3, Representation::Spectral)?;
        out.data.par_chunks_mut(3).enumerate().for_each(|(i, v)| {
            let xd = lat.deriv_xi(i % ns);
            for j in 0..3 {
                v[j] = p.data[i] * Complex64::new(0.0, xd[j]);
            }
        });
        Ok(out)
    }

    /// The linear time-periodic Oseen operator ∂_t - Δ - λ∂₁, i.e. multiplication by
    /// |ξ|² + i((2π/T)k - λξ₁) on every mode.
    pub fn oseen_operator(&self, field: &TPField) -> Result<TPField, MultiplierError> {
        self.check(field, None)?;
        let c = field.components;
        let mut out = field.clone();
        out.data.par_chunks_mut(c).enumerate().for_each(|(i, v)| {
            let d = self.osc[i];
            v.iter_mut().for_each(|x| *x *= d);
        });
        Ok(out)
    }
}

/// One-shot variants building the symbols for the field's own parameters.
pub fn project(field: &TPField, which: Projection) -> Result<TPField, MultiplierError> {
    Multipliers::new(&field.params)?.project(field, which)
}

pub fn helmholtz(field: &TPField) -> Result<TPField, MultiplierError> {
    Multipliers::new(&field.params)?.helmholtz(field)
}

pub fn apply_osc_inverse(field: &TPField) -> Result<TPField, MultiplierError> {
    Multipliers::new(&field.params)?.apply_osc_inverse(field)
}

pub fn apply_steady_oseen_inverse(field: &TPField) -> Result<TPField, MultiplierError> {
    Multipliers::new(&field.params)?.apply_steady_oseen_inverse(field)
}

pub fn recover_pressure(g: &TPField) -> Result<TPField, MultiplierError> {
    Multipliers::new(&g.params)?.recover_pressure(g)
}

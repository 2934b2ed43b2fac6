//! Pseudo-spectral evaluation of the quadratic term u·∇u = div(u⊗u) (u solenoidal),
//! with optional 2/3-rule dealiasing in all four directions.

use num_complex::Complex64;
use rayon::prelude::*;

use tpns_core::{
    build_lattice, divergence_max, transform, transform_in_place, Direction, Lattice, Representation, TPField,
};

use crate::error::SolverError;

/// Retained-mode predicate of the 2/3 rule: 3|k| < 2N + 1 in time and 3|m| < n per
/// spatial axis.
#[derive(Clone, Copy, Debug)]
pub struct Dealias {
    nt: usize,
    n: usize,
}

impl Dealias {
    pub fn new(lat: &Lattice) -> Dealias {
        Dealias {
            nt: lat.n_time(),
            n: lat.n_spatial,
        }
    }

    pub fn keeps(&self, lat: &Lattice, it: usize, p: usize) -> bool {
        let k = lat.temporal_mode(it);
        if 3 * k.unsigned_abs() as usize >= self.nt {
            return false;
        }
        lat.unflat(p)
            .iter()
            .all(|&i| 3 * (lat.spatial_mode(i).unsigned_abs() as usize) < self.n)
    }

    /// Zeroes every mode outside the retained set.
    pub fn truncate(&self, field: &mut TPField) {
        let lat = field.lattice();
        let ns = lat.n_space();
        let c = field.components;
        field.data.par_chunks_mut(c).enumerate().for_each(|(i, v)| {
            if !self.keeps(&lat, i / ns, i % ns) {
                v.iter_mut().for_each(|x| *x = Complex64::default());
            }
        });
    }
}

fn check_solenoidal(u: &TPField) -> Result<(), SolverError> {
    u.expect(Representation::Spectral)?;
    u.expect_components(3)?;
    let div = divergence_max(u)?;
    let allowed = u.params.tol_div * u.max_abs();
    if div > allowed {
        return Err(SolverError::NotSolenoidal {
            divergence: div,
            allowed,
        });
    }
    Ok(())
}

fn physical_velocity(u: &TPField) -> Result<TPField, SolverError> {
    let mut ut = u.clone();
    if u.params.dealias {
        Dealias::new(&u.lattice()).truncate(&mut ut);
    }
    transform_in_place(&mut ut, Direction::ToPhysical)?;
    Ok(ut)
}

/// div(u⊗u) in spectral representation (the form used by the solver).
pub fn advect(u: &TPField) -> Result<TPField, SolverError> {
    check_solenoidal(u)?;
    let params = &u.params;
    let lat = build_lattice(params)?;
    let ns = lat.n_space();
    let mut out = TPField::zeros(params, 3, Representation::Spectral)?;
    if u.max_abs() == 0.0 {
        return Ok(out);
    }
    let phys = physical_velocity(u)?;
    let mut buf = TPField::zeros(params, 1, Representation::Physical)?;
    for j in 0..3 {
        for l in j..3 {
            buf.representation = Representation::Physical;
            buf.data.par_iter_mut().enumerate().for_each(|(i, b)| {
                *b = phys.data[3 * i + j] * phys.data[3 * i + l];
            });
            transform_in_place(&mut buf, Direction::ToSpectral)?;
            out.data.par_chunks_mut(3).enumerate().for_each(|(i, o)| {
                let xd = lat.deriv_xi(i % ns);
                let v = buf.data[i];
                o[j] += v * Complex64::new(0.0, xd[l]);
                if l != j {
                    o[l] += v * Complex64::new(0.0, xd[j]);
                }
            });
        }
    }
    if params.dealias {
        Dealias::new(&lat).truncate(&mut out);
    }
    Ok(out)
}

/// Σ_j u_j ∂_j u in spectral representation (convective form).
pub fn advect_convective(u: &TPField) -> Result<TPField, SolverError> {
    check_solenoidal(u)?;
    let params = &u.params;
    let lat = build_lattice(params)?;
    let ns = lat.n_space();
    if u.max_abs() == 0.0 {
        return Ok(TPField::zeros(params, 3, Representation::Spectral)?);
    }
    let dealias = params.dealias.then(|| Dealias::new(&lat));
    let mut ut = u.clone();
    if let Some(d) = dealias {
        d.truncate(&mut ut);
    }
    let phys = transform(&ut, Direction::ToPhysical)?;
    let mut acc = TPField::zeros(params, 3, Representation::Physical)?;
    for j in 0..3 {
        let mut du = ut.clone();
        du.data.par_chunks_mut(3).enumerate().for_each(|(i, v)| {
            let q = Complex64::new(0.0, lat.deriv_xi(i % ns)[j]);
            v.iter_mut().for_each(|x| *x *= q);
        });
        transform_in_place(&mut du, Direction::ToPhysical)?;
        acc.data.par_chunks_mut(3).enumerate().for_each(|(i, a)| {
            let uj = phys.data[3 * i + j];
            for c in 0..3 {
                a[c] += uj * du.data[3 * i + c];
            }
        });
    }
    transform_in_place(&mut acc, Direction::ToSpectral)?;
    if let Some(d) = dealias {
        d.truncate(&mut acc);
    }
    Ok(acc)
}

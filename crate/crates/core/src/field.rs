use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::fft::{corner_phase, fft4, Shape};
use crate::lattice::{build_lattice, Lattice};
use crate::params::Params;
use crate::reduce::det_max;

/// Whether a field holds point values or Fourier coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Physical,
    Spectral,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Representation::Physical => "physical",
            Representation::Spectral => "spectral",
        }
    }
}

/// Transform direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    ToSpectral,
    ToPhysical,
}

/// A time-periodic scalar or vector field on the lattice.
///
/// `data` is indexed (time slot, spatial slot, component) with time slowest and
/// component fastest. In the physical representation the slots are time samples and
/// grid points; in the spectral representation they are temporal and spatial modes
/// in FFT order.
#[derive(Clone, Debug, PartialEq)]
pub struct TPField {
    pub representation: Representation,
    pub components: usize,
    pub data: Vec<Complex64>,
    pub params: Params,
}

impl TPField {
    /// All-zero field.
    pub fn zeros(
        params: &Params,
        components: usize,
        representation: Representation,
    ) -> Result<TPField, CoreError> {
        params.validate()?;
        if components != 1 && components != 3 {
            return Err(CoreError::ComponentMismatch {
                expected: 3,
                found: components,
            });
        }
        let shape = Shape {
            nt: 2 * params.n_temporal + 1,
            n: params.n_spatial,
            comps: components,
        };
        Ok(TPField {
            representation,
            components,
            data: vec![Complex64::default(); shape.len()],
            params: params.clone(),
        })
    }

    /// Physical field sampled from `f(t, x, out)`, which fills one value per component.
    pub fn from_fn<F>(params: &Params, components: usize, f: F) -> Result<TPField, CoreError>
    where
        F: Fn(f64, [f64; 3], &mut [Complex64]) + Sync,
    {
        let mut field = TPField::zeros(params, components, Representation::Physical)?;
        let lat = build_lattice(params)?;
        let ns = lat.n_space();
        field
            .data
            .par_chunks_mut(components)
            .enumerate()
            .for_each(|(i, out)| {
                let it = i / ns;
                let p = i % ns;
                f(lat.time_samples[it], lat.point(p), out);
            });
        Ok(field)
    }

    pub fn shape(&self) -> Shape {
        Shape {
            nt: 2 * self.params.n_temporal + 1,
            n: self.params.n_spatial,
            comps: self.components,
        }
    }

    pub fn lattice(&self) -> Lattice {
        build_lattice(&self.params).expect("field params were validated at construction")
    }

    /// Flat data index of (time slot, spatial slot, component).
    pub fn index(&self, it: usize, p: usize, comp: usize) -> usize {
        let ns = self.params.n_spatial.pow(3);
        (it * ns + p) * self.components + comp
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        det_max(self.data.len(), |i| self.data[i].norm())
    }

    pub fn expect(&self, repr: Representation) -> Result<(), CoreError> {
        if self.representation != repr {
            return Err(CoreError::RepresentationMismatch {
                expected: repr.name(),
                found: self.representation.name(),
            });
        }
        Ok(())
    }

    pub fn expect_components(&self, comps: usize) -> Result<(), CoreError> {
        if self.components != comps {
            return Err(CoreError::ComponentMismatch {
                expected: comps,
                found: self.components,
            });
        }
        Ok(())
    }

    /// Largest deviation from Hermitian symmetry û(-k,-ξ) = conj û(k,ξ), relative to
    /// the largest coefficient. Only meaningful for spectral fields.
    pub fn hermitian_defect(&self) -> f64 {
        let lat = self.lattice();
        let ns = lat.n_space();
        let nt = lat.n_time();
        let c = self.components;
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let d = det_max(nt * ns * c, |i| {
            let comp = i % c;
            let p = (i / c) % ns;
            let it = i / (c * ns);
            let j = self.index(lat.conjugate_temporal(it), lat.conjugate_spatial(p), comp);
            (self.data[i] - self.data[j].conj()).norm()
        });
        d / scale
    }

    /// Largest imaginary part relative to the largest modulus (physical fields).
    pub fn imag_defect(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        det_max(self.data.len(), |i| self.data[i].im.abs()) / scale
    }
}

/// Transforms between physical values and Fourier coefficients.
///
/// The forward direction averages over time samples and grid points, so the
/// (k = 0, ξ = 0) coefficient is the time-space mean and
/// f(t, x) = Σ û(k, ξ) e^{i(2π/T)kt + iξ·x}.
pub fn transform(field: &TPField, direction: Direction) -> Result<TPField, CoreError> {
    let mut out = field.clone();
    transform_in_place(&mut out, direction)?;
    Ok(out)
}

/// In-place variant of [`transform`].
pub fn transform_in_place(field: &mut TPField, direction: Direction) -> Result<(), CoreError> {
    let shape = field.shape();
    match direction {
        Direction::ToSpectral => {
            field.expect(Representation::Physical)?;
            fft4(&mut field.data, shape, false);
            corner_phase(&mut field.data, shape);
            let scale = 1.0 / (shape.nt * shape.n * shape.n * shape.n) as f64;
            field.data.par_iter_mut().for_each(|v| *v *= scale);
            field.representation = Representation::Spectral;
        }
        Direction::ToPhysical => {
            field.expect(Representation::Spectral)?;
            corner_phase(&mut field.data, shape);
            fft4(&mut field.data, shape, true);
            field.representation = Representation::Physical;
        }
    }
    Ok(())
}

/// max over modes of |ξ·û(k, ξ)|, using the differentiation wavevector (axis Nyquist
/// components set to zero).
pub fn divergence_max(field: &TPField) -> Result<f64, CoreError> {
    field.expect(Representation::Spectral)?;
    field.expect_components(3)?;
    let lat = field.lattice();
    let ns = lat.n_space();
    let n_modes = lat.n_time() * ns;
    Ok(det_max(n_modes, |i| {
        let p = i % ns;
        let q = lat.deriv_xi(p);
        let base = i * 3;
        let d = field.data[base] * q[0] + field.data[base + 1] * q[1] + field.data[base + 2] * q[2];
        d.norm()
    }))
}

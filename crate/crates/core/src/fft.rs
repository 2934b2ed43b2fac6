//! Multi-dimensional FFTs over (time, x, y, z, component) arrays.
//!
//! Every line transform is independent, so results do not depend on how lines are
//! distributed over threads.

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::sync::Arc;

/// Shape of a field array: `nt` time samples, `n³` spatial points, `comps` components,
/// stored with time slowest and component fastest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub nt: usize,
    pub n: usize,
    pub comps: usize,
}

impl Shape {
    pub fn len(&self) -> usize {
        self.nt * self.n * self.n * self.n * self.comps
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn slice_len(&self) -> usize {
        self.n * self.n * self.n * self.comps
    }
}

#[derive(Clone, Copy)]
struct SharedPtr(*mut Complex64);
unsafe impl Send for SharedPtr {}
unsafe impl Sync for SharedPtr {}

fn plan(len: usize, dir: FftDirection) -> Arc<dyn Fft<f64>> {
    let mut planner = FftPlanner::new();
    planner.plan_fft(len, dir)
}

/// Unnormalized in-place transform along all four axes (time and the three spatial
/// axes). `inverse` selects the positive-exponent direction.
pub fn fft4(data: &mut [Complex64], shape: Shape, inverse: bool) {
    assert_eq!(data.len(), shape.len());
    fft_space(data, shape, inverse);
    fft_time(data, shape, inverse);
}

/// Unnormalized in-place transform along the three spatial axes of every time slice.
pub fn fft_space(data: &mut [Complex64], shape: Shape, inverse: bool) {
    let dir = if inverse {
        FftDirection::Inverse
    } else {
        FftDirection::Forward
    };
    let n = shape.n;
    let c = shape.comps;
    let fft = plan(n, dir);
    // z axis: contiguous blocks of n*c hold c interleaved lines.
    data.par_chunks_mut(n * c).for_each_init(
        || (vec![Complex64::default(); n], vec![Complex64::default(); fft.get_inplace_scratch_len()]),
        |(buf, scratch), block| {
            for comp in 0..c {
                for j in 0..n {
                    buf[j] = block[j * c + comp];
                }
                fft.process_with_scratch(buf, scratch);
                for j in 0..n {
                    block[j * c + comp] = buf[j];
                }
            }
        },
    );
    // y axis: blocks of n*n*c.
    data.par_chunks_mut(n * n * c).for_each_init(
        || (vec![Complex64::default(); n], vec![Complex64::default(); fft.get_inplace_scratch_len()]),
        |(buf, scratch), block| {
            for iz in 0..n {
                for comp in 0..c {
                    for j in 0..n {
                        buf[j] = block[(j * n + iz) * c + comp];
                    }
                    fft.process_with_scratch(buf, scratch);
                    for j in 0..n {
                        block[(j * n + iz) * c + comp] = buf[j];
                    }
                }
            }
        },
    );
    // x axis: one block per time slice, lines strided by n*n*c; parallel over columns.
    let stride = n * n * c;
    for slice in data.chunks_mut(n * stride) {
        let ptr = SharedPtr(slice.as_mut_ptr());
        (0..stride).into_par_iter().with_min_len(64).for_each_init(
            || (vec![Complex64::default(); n], vec![Complex64::default(); fft.get_inplace_scratch_len()]),
            |(buf, scratch), col| {
                let p = ptr;
                // SAFETY: each column index touches a disjoint set of elements
                // {col + j*stride}, all inside `slice`.
                unsafe {
                    for j in 0..n {
                        buf[j] = *p.0.add(col + j * stride);
                    }
                    fft.process_with_scratch(buf, scratch);
                    for j in 0..n {
                        *p.0.add(col + j * stride) = buf[j];
                    }
                }
            },
        );
    }
}

/// Unnormalized in-place transform along the time axis.
pub fn fft_time(data: &mut [Complex64], shape: Shape, inverse: bool) {
    let nt = shape.nt;
    if nt == 1 {
        return;
    }
    let dir = if inverse {
        FftDirection::Inverse
    } else {
        FftDirection::Forward
    };
    let fft = plan(nt, dir);
    let stride = shape.slice_len();
    let ptr = SharedPtr(data.as_mut_ptr());
    (0..stride).into_par_iter().with_min_len(256).for_each_init(
        || (vec![Complex64::default(); nt], vec![Complex64::default(); fft.get_inplace_scratch_len()]),
        |(buf, scratch), col| {
            let p = ptr;
            // SAFETY: disjoint columns {col + j*stride} within `data`.
            unsafe {
                for j in 0..nt {
                    buf[j] = *p.0.add(col + j * stride);
                }
                fft.process_with_scratch(buf, scratch);
                for j in 0..nt {
                    *p.0.add(col + j * stride) = buf[j];
                }
            }
        },
    );
}

/// Multiplies every spatial mode by (-1)^(ix+iy+iz). This converts between DFT
/// coefficients relative to the box corner -L and Fourier coefficients relative to the
/// origin, since e^{iξ·L} = (-1)^m per axis for ξ = (π/L)m.
pub fn corner_phase(data: &mut [Complex64], shape: Shape) {
    let n = shape.n;
    let c = shape.comps;
    data.par_chunks_mut(n * c).enumerate().for_each(|(line, block)| {
        let iy = line % n;
        let ix = (line / n) % n;
        for iz in 0..n {
            if (ix + iy + iz) % 2 == 1 {
                for comp in 0..c {
                    block[iz * c + comp] = -block[iz * c + comp];
                }
            }
        }
    });
}

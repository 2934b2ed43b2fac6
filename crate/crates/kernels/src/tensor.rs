use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::oseen::to_complex;

/// Which fundamental solution a tensor belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Steady,
    Oscillatory(i64),
}

/// A 3×3 kernel value at a point, optionally a derivative ∂_h of the kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelTensor {
    pub entries: [[Complex64; 3]; 3],
    pub point: [f64; 3],
    pub mode: Mode,
    /// 0 for values, 1 for a first derivative.
    pub deriv_order: u8,
    /// Derivative direction h when `deriv_order == 1`.
    pub deriv_dir: Option<usize>,
}

impl KernelTensor {
    pub fn new(entries: [[Complex64; 3]; 3], point: [f64; 3], mode: Mode, deriv_dir: Option<usize>) -> Self {
        KernelTensor {
            entries,
            point,
            mode,
            deriv_order: u8::from(deriv_dir.is_some()),
            deriv_dir,
        }
    }

    pub fn from_real(entries: [[f64; 3]; 3], point: [f64; 3], mode: Mode, deriv_dir: Option<usize>) -> Self {
        KernelTensor::new(to_complex(entries), point, mode, deriv_dir)
    }

    /// Frobenius norm of the entries.
    pub fn norm(&self) -> f64 {
        self.entries.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    /// Largest entrywise difference to `other`.
    pub fn max_diff(&self, other: &KernelTensor) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                m = m.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        m
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

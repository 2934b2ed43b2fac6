//! Fundamental solutions of the time-periodic Oseen system: the steady Oseen kernel
//! Γ^λ, the per-mode scalar kernel Γ_{R,k}, the per-mode velocity kernels and the
//! purely oscillatory kernel Γ⊥.

pub mod blend;
pub mod brinkman;
pub mod convolution;
pub mod error;
pub mod mode;
pub mod oseen;
pub mod quad;
pub mod special;
pub mod spectral;
pub mod tensor;
pub mod velocity;

pub use error::KernelError;
pub use mode::{mode_scalar_kernel, mode_scalar_value, scalar_jet, ModeRates, ScalarJet, ScalarKernelValue};
pub use oseen::{frobenius, oseen_gamma, oseen_gamma_jet, oseen_gamma_values, oseen_phi};
pub use special::{exp_integral_e1, oseen_e, oseen_e_derivs, sqrt_nnr};
pub use tensor::{KernelTensor, Mode};
pub use velocity::{
    mode_velocity_jet, mode_velocity_kernel, mode_velocity_kernel_grad, tp_kernel_l2t, tp_kernel_timeslice, Route,
    TimeSlice,
};

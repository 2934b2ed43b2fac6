//! Forcing generators, the pseudo-spectral nonlinearity, manufactured-solution checks
//! and the small-data Picard solver for the time-periodic Navier–Stokes system.

pub mod advect;
pub mod error;
pub mod forcing;
pub mod manufactured;
pub mod picard;

pub use advect::{advect, advect_convective, Dealias};
pub use error::SolverError;
pub use forcing::{bump, nyquist_tail, sample_forcing, ForcingSpec, TimeProfile};
pub use manufactured::{manufactured_field, manufactured_roundtrip};
pub use picard::{
    linear_oracle, linear_solve, picard_solve, picard_solve_observed, spectral_forcing, spectral_residual, Solution,
};

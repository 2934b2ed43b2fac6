//! Discretized group lattice ℝ/TZ × [-L, L)³, time-periodic fields, Fourier transforms
//! and deterministic discrete norms.

pub mod dump;
pub mod error;
pub mod fft;
pub mod field;
pub mod lattice;
pub mod norms;
pub mod params;
pub mod reduce;

pub use error::CoreError;
pub use field::{divergence_max, transform, transform_in_place, Direction, Representation, TPField};
pub use lattice::{build_lattice, Lattice};
pub use norms::{lp_integral, lp_norm, norm3, parseval_sum, Region};
pub use params::Params;

pub use num_complex::Complex64;

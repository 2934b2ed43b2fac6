//! Fourier multipliers of the time-periodic Oseen problem: the steady/oscillatory time
//! projections, the Helmholtz projection, the oscillatory inverse, the steady Oseen
//! inverse and pressure recovery.

pub mod error;
pub mod ops;
pub mod symbols;

pub use error::MultiplierError;
pub use ops::{
    apply_osc_inverse, apply_steady_oseen_inverse, helmholtz, project, recover_pressure, Multipliers, Projection,
};
pub use symbols::{helmholtz_symbol, osc_denominator, SymbolGrid, SymbolKind, SymbolValues};

//! One check per quantitative claim about the time-periodic Oseen/Navier–Stokes
//! problem, each producing a [`VerificationReport`] of measured values, thresholds and
//! a pass flag.

pub mod bounds;
pub mod decay;
pub mod error;
pub mod expansion;
pub mod extras;
pub mod flux;
pub mod integrability;
pub mod oseen;
pub mod report;
pub mod suite;
pub mod symbol;

pub use bounds::verify_mode_kernel_bounds;
pub use decay::{decay_scan, verify_tp_kernel_decay, DecayPlan, DecayScan};
pub use error::VerifyError;
pub use expansion::{verify_expansion, verify_expansion_with, Dominance};
pub use extras::{verify_dual_route, verify_multiplier_exactness, verify_picard_small_data, SmallDataSolve};
pub use flux::{shell_balances, verify_energy_flux, verify_energy_flux_refined, FluxRule, ShellBalance};
pub use integrability::verify_integrability;
pub use oseen::verify_oseen_props;
pub use report::{Bound, ReportBuilder, VerificationReport};
pub use suite::{resolve_claim, Claim, Suite, CLAIMS};
pub use symbol::verify_symbol_nonvanishing;

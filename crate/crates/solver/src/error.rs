use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("forcing support reaches |x| = {extent}, beyond the admissible L/2 = {limit}")]
    SupportTooLarge { extent: f64, limit: f64 },
    #[error("invalid forcing: {0}")]
    InvalidForcing(String),
    #[error("input is not solenoidal: divergence {divergence} exceeds {allowed}")]
    NotSolenoidal { divergence: f64, allowed: f64 },
    #[error("field has steady (k = 0) content of size {0}")]
    SteadyContent(f64),
    #[error("non-finite value encountered at iteration {iteration}")]
    NonFinite { iteration: usize },
    #[error(transparent)]
    Multiplier(#[from] tpns_multipliers::MultiplierError),
    #[error(transparent)]
    Core(#[from] tpns_core::CoreError),
}

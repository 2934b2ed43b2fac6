use thiserror::Error;

#[derive(Debug, Error)]
pub enum AsymptoticsError {
    #[error("decay fit needs at least 4 samples, got {0}")]
    TooFewSamples(usize),
    #[error("decay fit radii must span a factor >= 4, got {0}")]
    SpanTooSmall(f64),
    #[error("decay fit needs positive values, got {value} at radius {radius}")]
    NonPositive { radius: f64, value: f64 },
    #[error("decay fit radii must be positive and strictly increasing")]
    NotIncreasing,
    #[error("far-field point |x| = {got} lies inside the forcing margin |x| >= {min}")]
    InsideMargin { got: f64, min: f64 },
    #[error("profile evaluated at the origin")]
    AtOrigin,
    #[error(transparent)]
    Kernel(#[from] tpns_kernels::KernelError),
    #[error(transparent)]
    Solver(#[from] tpns_solver::SolverError),
    #[error(transparent)]
    Core(#[from] tpns_core::CoreError),
}

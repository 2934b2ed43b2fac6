use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("mode k = 0 is not an oscillatory mode")]
    SteadyMode,
    #[error("{what}: exponent r = {r} lies outside the range {range}")]
    ExponentOutOfRange { what: &'static str, r: f64, range: &'static str },
    #[error("shell pair ({inner}, {outer}) must satisfy 0 < inner < outer <= {limit}")]
    ShellOutsideTrustedRegion { inner: f64, outer: f64, limit: f64 },
    #[error("solution did not converge ({iterations} iterations, residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },
    #[error("c_f = 0: the profile-dominance assertion is vacuous")]
    VacuousDominance,
    #[error("unknown claim id '{0}'")]
    UnknownClaim(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error(transparent)]
    Core(#[from] tpns_core::CoreError),
    #[error(transparent)]
    Kernel(#[from] tpns_kernels::KernelError),
    #[error(transparent)]
    Multiplier(#[from] tpns_multipliers::MultiplierError),
    #[error(transparent)]
    Solver(#[from] tpns_solver::SolverError),
    #[error(transparent)]
    Asymptotics(#[from] tpns_asymptotics::AsymptoticsError),
}

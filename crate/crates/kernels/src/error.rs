use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("kernel evaluated at the origin")]
    AtOrigin,
    #[error("per-mode kernels are defined for oscillatory modes only (k = 0 given)")]
    SteadyMode,
    #[error("drift required: lambda must be nonzero")]
    DriftRequired,
    #[error("derivative order {0} not supported here")]
    DerivOrder(u8),
    #[error("convolution route needs |x| >= {min}, got |x| = {got}")]
    InsideQuadratureBall { min: f64, got: f64 },
    #[error("k_max must satisfy 1 <= k_max <= n_temporal ({n_temporal}), got {k_max}")]
    ModeRange { k_max: usize, n_temporal: usize },
    #[error(transparent)]
    Core(#[from] tpns_core::CoreError),
}

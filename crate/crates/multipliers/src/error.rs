use thiserror::Error;

#[derive(Debug, Error)]
pub enum MultiplierError {
    #[error("oscillatory denominator vanishes at temporal mode {k}, spatial slot {p}")]
    ZeroDenominator { k: i64, p: usize },
    #[error(transparent)]
    Core(#[from] tpns_core::CoreError),
}

//! Reductions whose result is independent of the number of worker threads.
//!
//! Work is split into fixed-size chunks; each chunk is summed sequentially, chunks may
//! run on any thread, and the partial sums are combined in chunk order.

use rayon::prelude::*;

/// Fixed chunk length; part of the reproducibility contract, never derived from the
/// thread count.
pub const CHUNK: usize = 4096;

/// Deterministic sum of `term(i)` for `i` in `0..len`.
pub fn det_sum<F>(len: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let chunks = len.div_ceil(CHUNK);
    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(len);
            let mut s = 0.0;
            for i in lo..hi {
                s += term(i);
            }
            s
        })
        .collect();
    partials.iter().sum()
}

/// Deterministic maximum of `term(i)` (NaN-propagating: any NaN yields NaN).
pub fn det_max<F>(len: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let chunks = len.div_ceil(CHUNK);
    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(len);
            let mut m = f64::NEG_INFINITY;
            for i in lo..hi {
                m = nan_max(m, term(i));
            }
            m
        })
        .collect();
    partials.into_iter().fold(f64::NEG_INFINITY, nan_max)
}

fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

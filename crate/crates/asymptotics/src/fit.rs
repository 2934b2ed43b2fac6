//! Power-law decay fits by least squares in log–log coordinates.

use serde::{Deserialize, Serialize};

use crate::error::AsymptoticsError;

/// value ≈ c_fit · radius^(-alpha) along one direction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    pub direction: [f64; 3],
    pub quantity: String,
    pub alpha: f64,
    pub c_fit: f64,
    pub r_squared: f64,
    pub radii: Vec<f64>,
}

/// Ordinary least squares of log(value) against log(radius). Requires at least four
/// samples with strictly increasing radii spanning a factor of at least 4.
pub fn fit_decay(samples: &[(f64, f64)], direction: [f64; 3], quantity: &str) -> Result<DecayFit, AsymptoticsError> {
    if samples.len() < 4 {
        return Err(AsymptoticsError::TooFewSamples(samples.len()));
    }
    if samples[0].0 <= 0.0 || samples.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(AsymptoticsError::NotIncreasing);
    }
    if let Some(&(radius, value)) = samples.iter().find(|(_, v)| !(*v > 0.0)) {
        return Err(AsymptoticsError::NonPositive { radius, value });
    }
    let span = samples[samples.len() - 1].0 / samples[0].0;
    if span < 4.0 {
        return Err(AsymptoticsError::SpanTooSmall(span));
    }
    let n = samples.len() as f64;
    let lx: Vec<f64> = samples.iter().map(|(r, _)| r.ln()).collect();
    let ly: Vec<f64> = samples.iter().map(|(_, v)| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = ly.iter().map(|b| (b - my) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(a, b)| {
            let e = b - (intercept + slope * a);
            e * e
        })
        .sum();
    let r_squared = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    Ok(DecayFit {
        direction,
        quantity: quantity.to_string(),
        alpha: -slope,
        c_fit: intercept.exp(),
        r_squared,
        radii: samples.iter().map(|(r, _)| *r).collect(),
    })
}

/// Geometric sequence of `count` radii from `lo` to `hi`.
pub fn geometric_radii(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let q = (hi / lo).ln() / (count - 1) as f64;
    (0..count)
        .map(|i| if i + 1 == count { hi } else { lo * (q * i as f64).exp() })
        .collect()
}

use serde::{Deserialize, Serialize};
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::CoreError;
use crate::field::{Representation, TPField};

/// JSON sidecar describing a binary field dump.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub representation: Representation,
    pub components: usize,
    pub n_temporal: usize,
    pub n_spatial: usize,
    pub box_half_length: f64,
    pub period: f64,
    pub lambda: f64,
    /// Mode ordering of spectral slots ("fft": nonnegative modes first).
    pub ordering: String,
}

/// Writes `<stem>.bin` (little-endian f64 real/imaginary pairs, time slowest,
/// component fastest) and `<stem>.json`.
pub fn write_field(field: &TPField, dir: &Path, stem: &str) -> Result<(), CoreError> {
    let mut bytes = Vec::with_capacity(field.data.len() * 16);
    for v in &field.data {
        bytes.extend_from_slice(&v.re.to_le_bytes());
        bytes.extend_from_slice(&v.im.to_le_bytes());
    }
    let mut f = fs::File::create(dir.join(format!("{stem}.bin")))?;
    f.write_all(&bytes)?;
    let side = Sidecar {
        representation: field.representation,
        components: field.components,
        n_temporal: field.params.n_temporal,
        n_spatial: field.params.n_spatial,
        box_half_length: field.params.box_half_length,
        period: field.params.period,
        lambda: field.params.lambda,
        ordering: "fft".to_string(),
    };
    fs::write(
        dir.join(format!("{stem}.json")),
        serde_json::to_string_pretty(&side)?,
    )?;
    Ok(())
}

/// Reads the raw coefficient stream of a dump back.
pub fn read_values(path: &Path) -> Result<Vec<num_complex::Complex64>, CoreError> {
    let bytes = fs::read(path)?;
    Ok(bytes
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[0..8].try_into().unwrap());
            let im = f64::from_le_bytes(c[8..16].try_into().unwrap());
            num_complex::Complex64::new(re, im)
        })
        .collect())
}

//! Structured pass/fail records.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::time::Instant;

/// Acceptance bound of one measured quantity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost(f64),
    AtLeast(f64),
    Within(f64, f64),
    /// Strictly greater than the value.
    Above(f64),
}

impl Bound {
    pub fn holds(&self, v: f64) -> bool {
        if !v.is_finite() {
            return false;
        }
        match *self {
            Bound::AtMost(b) => v <= b,
            Bound::AtLeast(b) => v >= b,
            Bound::Within(lo, hi) => (lo..=hi).contains(&v),
            Bound::Above(b) => v > b,
        }
    }
}

/// Outcome of one claim check. Quantities listed in `thresholds` are asserted; the
/// remaining entries of `measured` are reported only. `runtime_seconds` is not
/// serialized so that report files are reproducible byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub measured: BTreeMap<String, f64>,
    pub thresholds: BTreeMap<String, Bound>,
    pub pass: bool,
    #[serde(skip)]
    pub runtime_seconds: f64,
}

impl VerificationReport {
    /// Names of asserted quantities that miss their bound.
    pub fn failures(&self) -> Vec<String> {
        self.thresholds
            .iter()
            .filter(|(k, b)| !self.measured.get(*k).is_some_and(|v| b.holds(*v)))
            .map(|(k, _)| k.clone())
            .collect()
    }
}

/// Accumulates measurements of one claim.
#[derive(Debug)]
pub struct ReportBuilder {
    claim_id: String,
    measured: BTreeMap<String, f64>,
    thresholds: BTreeMap<String, Bound>,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(claim_id: &str) -> ReportBuilder {
        ReportBuilder {
            claim_id: claim_id.to_string(),
            measured: BTreeMap::new(),
            thresholds: BTreeMap::new(),
            start: Instant::now(),
        }
    }

    /// Records a value without asserting it.
    pub fn record(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.measured.insert(name.into(), value);
        self
    }

    /// Records a value and asserts `bound` on it.
    pub fn check(&mut self, name: impl Into<String>, value: f64, bound: Bound) -> &mut Self {
        let name = name.into();
        self.measured.insert(name.clone(), value);
        self.thresholds.insert(name, bound);
        self
    }

    /// Asserts a boolean condition, recorded as 1 (true) or 0 (false).
    pub fn check_flag(&mut self, name: impl Into<String>, ok: bool) -> &mut Self {
        self.check(name, if ok { 1.0 } else { 0.0 }, Bound::AtLeast(1.0))
    }

    pub fn finish(&self) -> VerificationReport {
        let pass = self
            .thresholds
            .iter()
            .all(|(k, b)| self.measured.get(k).is_some_and(|v| b.holds(*v)));
        VerificationReport {
            claim_id: self.claim_id.clone(),
            measured: self.measured.clone(),
            thresholds: self.thresholds.clone(),
            pass,
            runtime_seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}

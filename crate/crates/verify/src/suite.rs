//! The claim manifest and a runner that shares expensive intermediate results
//! (the Picard solve, the decay scan, the expansion scan) between claims.

use std::collections::BTreeMap;
use std::time::Instant;

use tpns_asymptotics::{DecayFit, Expansion};
use tpns_core::Params;
use tpns_solver::ForcingSpec;

use crate::bounds::{default_points, verify_mode_kernel_bounds};
use crate::decay::{verify_tp_kernel_decay, DecayScan};
use crate::error::VerifyError;
use crate::expansion::verify_expansion;
use crate::extras::{verify_dual_route, verify_multiplier_exactness, verify_picard_small_data, SmallDataSolve};
use crate::flux::{default_pairs, verify_energy_flux_refined};
use crate::integrability::{verify_integrability, DEFAULT_GRAD_R, DEFAULT_KERNEL_R};
use crate::oseen::verify_oseen_props;
use crate::report::VerificationReport;
use crate::symbol::verify_symbol_nonvanishing;

/// One entry of the claim manifest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Claim {
    pub id: &'static str,
    /// Short description of what is checked.
    pub title: &'static str,
    /// Decay rate the fitted exponent is compared with, if the claim has one.
    pub claimed_rate: Option<&'static str>,
}

/// Every claim, in execution order.
pub const CLAIMS: [Claim; 10] = [
    Claim {
        id: crate::symbol::CLAIM,
        title: "oscillatory symbol vanishes only at (k, ξ) = (0, 0)",
        claimed_rate: None,
    },
    Claim {
        id: crate::bounds::CLAIM,
        title: "pointwise bounds of the per-mode kernel",
        claimed_rate: None,
    },
    Claim {
        id: crate::decay::CLAIM,
        title: "decay of Γ⊥ and ∇Γ⊥",
        claimed_rate: Some("3 (value), 4 (gradient)"),
    },
    Claim {
        id: crate::integrability::CLAIM,
        title: "L^r integrability of Γ⊥ and ∇Γ⊥",
        claimed_rate: None,
    },
    Claim {
        id: crate::flux::CLAIM,
        title: "energy identity on spherical shells",
        claimed_rate: None,
    },
    Claim {
        id: crate::oseen::CLAIM,
        title: "Oseen kernel bounds, sphere integrals and wake",
        claimed_rate: Some("1 (downstream), 1/2 (sphere integral)"),
    },
    Claim {
        id: crate::expansion::CLAIM,
        title: "far-field expansion with faster-decaying remainder",
        claimed_rate: Some("3/2-ε (remainder)"),
    },
    Claim {
        id: crate::extras::DUAL_ROUTE_CLAIM,
        title: "spectral and convolution kernel routes agree",
        claimed_rate: None,
    },
    Claim {
        id: crate::extras::MULTIPLIER_CLAIM,
        title: "exactness of the lattice multipliers",
        claimed_rate: None,
    },
    Claim {
        id: crate::extras::PICARD_CLAIM,
        title: "small-data Picard iteration",
        claimed_rate: None,
    },
];

/// Modes of the per-mode kernel bound check.
pub const KERNEL_BOUND_MODES: [i64; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

/// Resolves a claim id: an exact id, or a prefix matching exactly one id
/// (`lemma_4_3` → `lemma_4_3_kernel_bounds`).
pub fn resolve_claim(name: &str) -> Result<&'static Claim, VerifyError> {
    if let Some(c) = CLAIMS.iter().find(|c| c.id == name) {
        return Ok(c);
    }
    let mut hits = CLAIMS.iter().filter(|c| !name.is_empty() && c.id.starts_with(name));
    match (hits.next(), hits.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(VerifyError::UnknownClaim(name.to_string())),
    }
}

/// Runs claims for one parameter set and forcing, caching every report and the shared
/// intermediate results behind them.
#[derive(Debug)]
pub struct Suite {
    pub params: Params,
    pub forcing: ForcingSpec,
    pub seed: u64,
    solve: Option<SmallDataSolve>,
    decay: Option<DecayScan>,
    expansion: Option<Expansion>,
    wake: Option<Vec<DecayFit>>,
    reports: BTreeMap<&'static str, VerificationReport>,
}

impl Suite {
    pub fn new(params: Params, forcing: ForcingSpec, seed: u64) -> Result<Suite, VerifyError> {
        params.validate()?;
        forcing.validate(&params)?;
        Ok(Suite {
            params,
            forcing,
            seed,
            solve: None,
            decay: None,
            expansion: None,
            wake: None,
            reports: BTreeMap::new(),
        })
    }

    /// Converged small-data solve (computed by `picard_small_data` or on demand).
    pub fn solve(&mut self) -> Result<&SmallDataSolve, VerifyError> {
        if self.solve.is_none() {
            self.run_claim(crate::extras::PICARD_CLAIM)?;
        }
        Ok(self.solve.as_ref().expect("solve cached"))
    }

    /// Decay scan of Γ⊥ (computed on demand).
    pub fn decay_scan(&mut self) -> Result<&DecayScan, VerifyError> {
        if self.decay.is_none() {
            self.run_claim(crate::decay::CLAIM)?;
        }
        Ok(self.decay.as_ref().expect("scan cached"))
    }

    /// Expansion scan (computed on demand).
    pub fn expansion(&mut self) -> Result<&Expansion, VerifyError> {
        if self.expansion.is_none() {
            self.run_claim(crate::expansion::CLAIM)?;
        }
        Ok(self.expansion.as_ref().expect("expansion cached"))
    }

    /// Wake-scan fits of Γ^λ (computed on demand).
    pub fn wake(&mut self) -> Result<&[DecayFit], VerifyError> {
        if self.wake.is_none() {
            self.run_claim(crate::oseen::CLAIM)?;
        }
        Ok(self.wake.as_deref().expect("wake cached"))
    }

    /// Report of one claim; a claim already run by this suite is not recomputed.
    pub fn run_claim(&mut self, name: &str) -> Result<VerificationReport, VerifyError> {
        let claim = resolve_claim(name)?;
        if let Some(r) = self.reports.get(claim.id) {
            return Ok(r.clone());
        }
        // shared inputs are charged to the claim that produces them
        if claim.id == crate::flux::CLAIM {
            self.solve()?;
        }
        let start = Instant::now();
        let params = self.params.clone();
        let mut report = match claim.id {
            crate::symbol::CLAIM => verify_symbol_nonvanishing(&params)?,
            crate::bounds::CLAIM => verify_mode_kernel_bounds(&params, &KERNEL_BOUND_MODES, &default_points(0.5, 6.0, 12))?,
            crate::decay::CLAIM => {
                let (r, scan) = verify_tp_kernel_decay(&params)?;
                self.decay = Some(scan);
                r
            }
            crate::integrability::CLAIM => verify_integrability(&params, &DEFAULT_KERNEL_R, &DEFAULT_GRAD_R)?,
            crate::flux::CLAIM => {
                let forcing = self.forcing.clone();
                let s = self.solve()?;
                verify_energy_flux_refined(&s.solution, &s.forcing, &forcing, &default_pairs(&params))?
            }
            crate::oseen::CLAIM => {
                let (r, wake) = verify_oseen_props(params.lambda)?;
                self.wake = Some(wake);
                r
            }
            crate::expansion::CLAIM => {
                let (r, e) = verify_expansion(&self.forcing, &params)?;
                self.expansion = Some(e);
                r
            }
            crate::extras::DUAL_ROUTE_CLAIM => verify_dual_route(&params, self.seed)?,
            crate::extras::MULTIPLIER_CLAIM => verify_multiplier_exactness(&params, self.seed)?,
            crate::extras::PICARD_CLAIM => {
                let (r, s) = verify_picard_small_data(&self.forcing, &params)?;
                self.solve = Some(s);
                r
            }
            other => return Err(VerifyError::UnknownClaim(other.to_string())),
        };
        report.runtime_seconds = start.elapsed().as_secs_f64();
        self.reports.insert(claim.id, report.clone());
        Ok(report)
    }

    /// Every claim of the manifest, in order.
    pub fn run_all(&mut self) -> Result<Vec<VerificationReport>, VerifyError> {
        CLAIMS.iter().map(|c| self.run_claim(c.id)).collect()
    }
}

//! Task execution and artifact emission.

use serde::Serialize;
use std::fs;
use std::path::Path;
use std::time::Instant;

use tpns_asymptotics::{DecayFit, ScanRow};
use tpns_core::{divergence_max, dump::write_field};
use tpns_kernels::{frobenius, oseen_gamma_values};
use tpns_verify::decay::DecayPlan;
use tpns_verify::{Suite, VerificationReport, VerifyError, CLAIMS};

use crate::config::{RunConfig, Task};
use crate::error::CliError;
use crate::summary::{write_summary, Timing};

/// Reports of the verifications executed and the wall time of every task.
#[derive(Debug, Default)]
pub struct Outcome {
    pub reports: Vec<VerificationReport>,
    pub timings: Vec<Timing>,
}

impl Outcome {
    /// Whether every executed verification passed.
    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }
}

/// One row of `decay_scan.csv` / `remainder_scan.csv`.
#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    dir_x: f64,
    dir_y: f64,
    dir_z: f64,
    radius: f64,
    quantity: &'a str,
    value: f64,
}

fn write_scan(path: &Path, rows: &[ScanRow]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(CsvRow {
            dir_x: r.direction[0],
            dir_y: r.direction[1],
            dir_z: r.direction[2],
            radius: r.radius,
            quantity: &r.quantity,
            value: r.value,
        })?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct SolveSummary {
    iterations: usize,
    converged: bool,
    final_residual: f64,
    divergence_max: f64,
    amplitude: f64,
}

#[derive(Debug, Serialize)]
struct FitEntry<'a> {
    direction: [f64; 3],
    quantity: &'a str,
    alpha: f64,
    c_fit: f64,
    r_squared: f64,
}

impl<'a> From<&'a DecayFit> for FitEntry<'a> {
    fn from(f: &'a DecayFit) -> Self {
        FitEntry {
            direction: f.direction,
            quantity: &f.quantity,
            alpha: f.alpha,
            c_fit: f.c_fit,
            r_squared: f.r_squared,
        }
    }
}

#[derive(Debug, Serialize)]
struct ExpansionFile<'a> {
    c_f: [f64; 3],
    fits: Vec<FitEntry<'a>>,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct ClaimStatus<'a> {
    claim_id: &'a str,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct VerifySummary<'a> {
    total: usize,
    passed: usize,
    failed: usize,
    claims: Vec<ClaimStatus<'a>>,
}

/// Creates the output directory; a failure here is a configuration error.
pub fn prepare_output(dir: &Path) -> Result<(), CliError> {
    let err = |e: std::io::Error| CliError::OutputDir {
        path: dir.display().to_string(),
        message: e.to_string(),
    };
    fs::create_dir_all(dir).map_err(err)?;
    if fs::metadata(dir).map_err(err)?.permissions().readonly() {
        return Err(CliError::OutputDir {
            path: dir.display().to_string(),
            message: "not writable".into(),
        });
    }
    Ok(())
}

fn task_error(task: &Task) -> impl Fn(VerifyError) -> CliError + '_ {
    move |e| CliError::Task {
        task: task.to_string(),
        message: e.to_string(),
    }
}

/// |Γ^λ| along the decay-plan rays, in the same layout as the Γ⊥ scan.
fn oseen_rows(lambda: f64, plan: &DecayPlan) -> Result<Vec<ScanRow>, CliError> {
    let mut rows = Vec::new();
    for d in &plan.directions {
        let n = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
        let d = d.map(|v| v / n);
        for &r in &plan.radii {
            let g = oseen_gamma_values(d.map(|v| v * r), lambda).map_err(|e| CliError::Task {
                task: Task::Kernels.to_string(),
                message: e.to_string(),
            })?;
            rows.push(ScanRow {
                direction: d,
                radius: r,
                quantity: "gamma_oseen".into(),
                value: frobenius(&g),
            });
        }
    }
    Ok(rows)
}

fn record(out: &Path, report: VerificationReport, outcome: &mut Outcome) -> Result<(), CliError> {
    write_json(&out.join(format!("verify_{}.json", report.claim_id)), &report)?;
    if let Some((k, _)) = report.measured.iter().find(|(_, v)| v.is_nan()) {
        return Err(CliError::NonFinite {
            claim_id: report.claim_id.clone(),
            quantity: k.clone(),
        });
    }
    outcome.timings.push(Timing {
        name: report.claim_id.clone(),
        seconds: report.runtime_seconds,
    });
    outcome.reports.push(report);
    Ok(())
}

fn run_task(task: &Task, suite: &mut Suite, out: &Path, outcome: &mut Outcome) -> Result<(), CliError> {
    match task {
        Task::Kernels => {
            let plan = DecayPlan::default();
            let mut rows = oseen_rows(suite.params.lambda, &plan)?;
            rows.extend(suite.decay_scan().map_err(task_error(task))?.rows.iter().cloned());
            write_scan(&out.join("decay_scan.csv"), &rows)?;
        }
        Task::Solve => {
            let s = suite.solve().map_err(task_error(task))?;
            let summary = SolveSummary {
                iterations: s.solution.iterations,
                converged: s.solution.converged,
                final_residual: s.solution.final_residual(),
                divergence_max: divergence_max(&s.solution.u).map_err(|e| task_error(task)(e.into()))?,
                amplitude: s.amplitude,
            };
            write_field(&s.solution.u, out, "solution_u").map_err(|e| task_error(task)(e.into()))?;
            write_field(&s.solution.p, out, "solution_p").map_err(|e| task_error(task)(e.into()))?;
            write_json(&out.join("solve_summary.json"), &summary)?;
        }
        Task::Expand => {
            let e = suite.expansion().map_err(task_error(task))?;
            let r = &e.report;
            let file = ExpansionFile {
                c_f: r.c_f,
                fits: r.fits.iter().chain(&r.profile_fits).chain(&r.oscillatory_fits).map(FitEntry::from).collect(),
                pass: r.pass,
            };
            write_json(&out.join("expansion_report.json"), &file)?;
            write_scan(&out.join("remainder_scan.csv"), &e.rows)?;
        }
        Task::Verify(id) => {
            let report = suite.run_claim(id).map_err(task_error(task))?;
            record(out, report, outcome)?;
        }
        Task::VerifyAll => {
            let mut statuses = Vec::new();
            for c in CLAIMS.iter() {
                let report = suite.run_claim(c.id).map_err(task_error(task))?;
                statuses.push(ClaimStatus {
                    claim_id: c.id,
                    pass: report.pass,
                });
                record(out, report, outcome)?;
            }
            let passed = statuses.iter().filter(|s| s.pass).count();
            write_json(
                &out.join("verify_summary.json"),
                &VerifySummary {
                    total: statuses.len(),
                    passed,
                    failed: statuses.len() - passed,
                    claims: statuses,
                },
            )?;
        }
        Task::Report => write_summary(out, &outcome.timings)?,
    }
    Ok(())
}

/// Executes the configured tasks in order. The output directory is created before
/// any computation starts.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let out = cfg.output_dir();
    prepare_output(out)?;
    let mut suite = Suite::new(cfg.params.clone(), cfg.forcing.clone(), cfg.seed).map_err(|e| CliError::Config {
        key: "params".into(),
        line: None,
        message: e.to_string(),
    })?;
    let mut outcome = Outcome::default();
    for task in &cfg.tasks {
        let start = Instant::now();
        run_task(task, &mut suite, out, &mut outcome)?;
        outcome.timings.push(Timing {
            name: format!("task {task}"),
            seconds: start.elapsed().as_secs_f64(),
        });
    }
    Ok(outcome)
}

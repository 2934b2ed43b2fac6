//! `summary.md`: a claim → pass table and the fitted exponents next to the claimed
//! rates, built from the `verify_<claim_id>.json` files of an output directory.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::SystemTime;

use tpns_verify::{VerificationReport, CLAIMS};

use crate::error::CliError;

/// Wall time of one task or claim in the current invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Timing {
    pub name: String,
    pub seconds: f64,
}

/// (claim id, measured quantity, claimed decay rate) of every fitted exponent
/// reported in the summary.
pub const EXPONENTS: [(&str, &str, &str); 5] = [
    ("lemma_4_4_decay", "alpha_value_min", "3"),
    ("lemma_4_4_decay", "alpha_grad_min", "4"),
    ("lemma_5_4_oseen", "alpha_downstream", "1"),
    ("lemma_5_4_oseen", "alpha_sphere_integral", "1/2"),
    ("theorem_2_2_expansion", "alpha_remainder_min", "3/2−ε"),
];

/// Reads every `verify_<claim_id>.json` in `dir`, in manifest order (claims not in
/// the manifest last, by name).
pub fn read_reports(dir: &Path) -> Result<Vec<VerificationReport>, CliError> {
    let mut files: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            p.file_name().and_then(|n| n.to_str()).is_some_and(|n| {
                n.starts_with("verify_") && n.ends_with(".json") && n != "verify_summary.json"
            })
        })
        .collect();
    files.sort();
    let mut reports = files
        .iter()
        .map(|p| Ok(serde_json::from_str::<VerificationReport>(&fs::read_to_string(p)?)?))
        .collect::<Result<Vec<_>, CliError>>()?;
    if reports.is_empty() {
        return Err(CliError::Report(format!("no verification reports in {}", dir.display())));
    }
    let rank = |id: &str| CLAIMS.iter().position(|c| c.id == id).unwrap_or(CLAIMS.len());
    reports.sort_by(|a, b| rank(&a.claim_id).cmp(&rank(&b.claim_id)).then(a.claim_id.cmp(&b.claim_id)));
    Ok(reports)
}

/// Renders the summary document. Exponents are printed with the shortest
/// representation that reads back to the stored value.
pub fn render_summary(reports: &[VerificationReport], timings: &[Timing], timestamp: &str) -> String {
    let mut s = String::new();
    let passed = reports.iter().filter(|r| r.pass).count();
    let _ = writeln!(s, "# Verification summary\n");
    let _ = writeln!(s, "{passed} of {} claims pass.\n", reports.len());
    let _ = writeln!(s, "| claim | checks | pass | failing quantities |");
    let _ = writeln!(s, "|---|---|---|---|");
    for r in reports {
        let title = CLAIMS.iter().find(|c| c.id == r.claim_id).map_or("", |c| c.title);
        let mark = if r.pass { "✓" } else { "✗" };
        let fails = r.failures().join(", ");
        let _ = writeln!(s, "| {} | {title} | {mark} | {fails} |", r.claim_id);
    }
    let _ = writeln!(s, "\n## Fitted exponents\n");
    let _ = writeln!(s, "| claim | quantity | fitted exponent | claimed rate |");
    let _ = writeln!(s, "|---|---|---|---|");
    let mut any = false;
    for (id, q, rate) in EXPONENTS {
        if let Some(v) = reports.iter().find(|r| r.claim_id == id).and_then(|r| r.measured.get(q)) {
            let _ = writeln!(s, "| {id} | {q} | {v} | {rate} |");
            any = true;
        }
    }
    if !any {
        let _ = writeln!(s, "\nNo report in this directory carries a fitted decay exponent.");
    }
    let _ = writeln!(s, "\n## Metadata\n");
    let _ = writeln!(s, "- generated: {timestamp}");
    let _ = writeln!(s, "- version: {}", env!("CARGO_PKG_VERSION"));
    if timings.is_empty() {
        let _ = writeln!(s, "- runtimes: not recorded (reports produced by an earlier invocation)");
    } else {
        let _ = writeln!(s, "- runtimes:");
        for t in timings {
            let _ = writeln!(s, "  - {}: {:.1} s", t.name, t.seconds);
        }
    }
    s
}

/// Writes `summary.md` into `dir`.
pub fn write_summary(dir: &Path, timings: &[Timing]) -> Result<(), CliError> {
    let reports = read_reports(dir)?;
    let stamp = humantime::format_rfc3339_seconds(SystemTime::now()).to_string();
    fs::write(dir.join("summary.md"), render_summary(&reports, timings, &stamp))?;
    Ok(())
}

use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

use tpns_cli::{run, CliError, Overrides, RunConfig, Task, EXIT_CONFIG, EXIT_FAIL, EXIT_PASS};

/// Verification workflows for time-periodic Oseen/Navier–Stokes flow.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Task to run instead of the configured ones (repeatable).
    #[arg(long = "task")]
    tasks: Vec<Task>,
    /// Output directory (overrides the configured one).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

fn execute(args: Args) -> Result<i32, CliError> {
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config {
                key: "--threads".into(),
                line: None,
                message: e.to_string(),
            })?;
    }
    let overrides = Overrides {
        tasks: args.tasks,
        output_dir: args.out,
    };
    let cfg = RunConfig::load(&args.config, &overrides)?;
    let outcome = run(&cfg)?;
    for r in &outcome.reports {
        println!("{}: {}", r.claim_id, if r.pass { "pass" } else { "FAIL" });
    }
    let failed: Vec<_> = outcome.reports.iter().filter(|r| !r.pass).collect();
    for r in &failed {
        eprintln!("verification failed: {} ({})", r.claim_id, r.failures().join(", "));
    }
    Ok(if failed.is_empty() { EXIT_PASS } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_CONFIG as u8);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    let code = execute(args).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    });
    ExitCode::from(code as u8)
}

//! Configuration, orchestration and report emission for the verification workflows.

pub mod config;
pub mod error;
pub mod run;
pub mod summary;

pub use config::{Overrides, RunConfig, Task};
pub use error::{CliError, EXIT_CONFIG, EXIT_FAIL, EXIT_NUMERICAL, EXIT_PASS};
pub use run::{run, Outcome};
pub use summary::{read_reports, render_summary, write_summary, Timing, EXPONENTS};

//! Scenario runner behind the `kinspace` binary.

pub mod error;
pub mod output;
pub mod render;
pub mod run;
pub mod scenario;
pub mod tasks;

use std::fs;
use std::path::Path;

pub use error::{CliError, Mismatch};
pub use run::{evaluate, run_scenario, Evaluation};
pub use scenario::Scenario;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// SVG text for a scenario and a render spec, both given as file paths.
pub fn render_files(scenario: &Path, spec: &Path) -> Result<String, CliError> {
    let scenario = Scenario::parse(&read(scenario)?)?;
    let spec = render::parse_spec(&read(spec)?)?;
    render::render(&scenario, &spec)
}

/// Runs every verification suite; returns the report and whether all passed.
pub fn selftest(seed: u64) -> (String, bool) {
    let mut report = String::new();
    let mut ok = true;
    for suite in kinspace_verify::run_all(seed) {
        ok &= suite.passed();
        report.push_str(&suite.summary());
        report.push('\n');
        for check in &suite.checks {
            report.push_str(&format!("    {check}\n"));
        }
    }
    (report, ok)
}

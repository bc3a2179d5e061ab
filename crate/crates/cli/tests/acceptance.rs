//! Exit gate: criteria 1-9 through the verification suites, criterion 10
//! through the binary, the shipped scenarios and `selftest`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};

use kinspace_cli::Scenario;
use kinspace_verify::{run, DEFAULT_SEED, SUITES};
use tempfile::TempDir;

fn kinspace() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kinspace"))
}

fn scenarios() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let mut found: Vec<PathBuf> = fs::read_dir(dir)
        .expect("scenarios directory")
        .map(|e| e.expect("directory entry").path())
        .filter(|p| {
            let name = p.file_name().and_then(|n| n.to_str()).unwrap_or("");
            name.ends_with(".toml") && !name.ends_with(".render.toml")
        })
        .collect();
    found.sort();
    found
}

fn outputs(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .map(|entries| {
            entries
                .map(|e| {
                    let path = e.expect("directory entry").path();
                    let name = path.file_name().unwrap().to_string_lossy().into_owned();
                    (name, fs::read(&path).expect("readable output"))
                })
                .collect()
        })
        .unwrap_or_default()
}

/// Problems found for criterion 10; empty when it passes.
fn criterion_10() -> Vec<String> {
    let mut problems = Vec::new();
    let files = scenarios();
    if files.len() < 7 {
        problems.push(format!(
            "expected one scenario per module, found {}",
            files.len()
        ));
    }
    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let text = fs::read_to_string(path).expect("readable scenario");
        match Scenario::parse(&text) {
            Ok(s) if s.tasks.iter().any(|t| !t.expect.is_empty()) => {}
            Ok(_) => problems.push(format!("{name}: no embedded expectations")),
            Err(e) => problems.push(format!("{name}: {e}")),
        }
        let runs: Vec<(TempDir, bool, String)> = (0..2)
            .map(|_| {
                let dir = TempDir::new().expect("temporary directory");
                let out = kinspace()
                    .arg("run")
                    .arg(path)
                    .arg("--out")
                    .arg(dir.path())
                    .output()
                    .expect("binary runs");
                let stderr = String::from_utf8_lossy(&out.stderr).into_owned();
                (dir, out.status.success(), stderr)
            })
            .collect();
        for (_, ok, stderr) in &runs {
            if !ok {
                problems.push(format!("{name}: {}", stderr.trim()));
            }
        }
        let (first, second) = (outputs(runs[0].0.path()), outputs(runs[1].0.path()));
        if first.is_empty() {
            problems.push(format!("{name}: no output files"));
        } else if first != second {
            problems.push(format!("{name}: outputs differ between runs"));
        }
        println!(
            "    {name}: {} files, identical across runs: {}",
            first.len(),
            first == second
        );
    }
    let selftest = kinspace()
        .arg("selftest")
        .arg("--seed")
        .arg(DEFAULT_SEED.to_string())
        .output()
        .expect("binary runs");
    if !selftest.status.success() {
        problems.push(format!("selftest exited with {:?}", selftest.status.code()));
    }
    problems
}

fn main() -> ExitCode {
    let mut all = true;
    for (id, _) in SUITES {
        let report = run(id, DEFAULT_SEED).expect("known suite");
        println!("{}", report.summary());
        for check in &report.checks {
            println!("    {check}");
        }
        all &= report.passed();
    }
    let problems = criterion_10();
    if problems.is_empty() {
        println!("criterion 10: PASS CLI scenarios and selftest");
    } else {
        println!(
            "criterion 10: FAIL CLI scenarios and selftest [{}]",
            problems.join("; ")
        );
        all = false;
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use kinspace::{KCurve, Worldline};
use serde_json::{json, Map, Value};

use crate::error::{CliError, Mismatch};
use crate::output::{to_json, trajectory_csv};
use crate::scenario::{Expected, Scenario, DEFAULT_TOLERANCE};
use crate::{render, tasks};

/// Outputs of every task, in scenario order.
pub struct Evaluation {
    pub outputs: Vec<(String, Map<String, Value>)>,
    pub trajectories: BTreeMap<String, (KCurve, Worldline)>,
}

pub fn evaluate(scenario: &Scenario) -> Result<Evaluation, CliError> {
    let mut outputs = Vec::new();
    let mut trajectories = BTreeMap::new();
    for task in &scenario.tasks {
        let done = tasks::execute(scenario, task)?;
        if let Some(t) = done.trajectory {
            trajectories.insert(task.name.clone(), t);
        }
        outputs.push((task.name.clone(), done.outputs));
    }
    Ok(Evaluation {
        outputs,
        trajectories,
    })
}

impl Evaluation {
    pub fn results(&self, scenario: &Scenario) -> Value {
        let mut tasks = Map::new();
        for ((name, outputs), spec) in self.outputs.iter().zip(&scenario.tasks) {
            let mut entry = Map::new();
            entry.insert("op".into(), Value::String(spec.op.clone()));
            entry.extend(outputs.clone());
            tasks.insert(name.clone(), Value::Object(entry));
        }
        json!({ "c": scenario.c, "n": scenario.n, "tasks": tasks })
    }

    /// Every `expect` entry that the computed outputs do not meet.
    pub fn mismatches(&self, scenario: &Scenario) -> Vec<Mismatch> {
        let mut found = Vec::new();
        for ((name, outputs), spec) in self.outputs.iter().zip(&scenario.tasks) {
            let default = spec.tolerance.unwrap_or(DEFAULT_TOLERANCE);
            for (key, want) in &spec.expect {
                let tol = spec.tolerances.get(key).copied().unwrap_or(default);
                let message = match outputs.get(key) {
                    None => Some("output missing".to_string()),
                    Some(got) => compare(got, want, tol),
                };
                if let Some(message) = message {
                    found.push(Mismatch {
                        task: name.clone(),
                        output: key.clone(),
                        message,
                    });
                }
            }
        }
        found
    }
}

fn close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}

fn numbers(v: &Value) -> Option<Vec<f64>> {
    v.as_array()?.iter().map(Value::as_f64).collect()
}

fn compare(got: &Value, want: &Expected, tol: f64) -> Option<String> {
    let vector = |got: Option<Vec<f64>>, want: &[f64]| match got {
        Some(g) if g.len() == want.len() => g
            .iter()
            .zip(want)
            .position(|(&a, &b)| !close(a, b, tol))
            .map(|i| {
                format!(
                    "component {i}: got {}, expected {} (tol {tol:e})",
                    g[i], want[i]
                )
            }),
        _ => Some(format!("expected {} numbers", want.len())),
    };
    match want {
        Expected::Number(b) => match got.as_f64() {
            Some(a) if close(a, *b, tol) => None,
            Some(a) => Some(format!("got {a}, expected {b} (tol {tol:e})")),
            None => Some("expected a number".into()),
        },
        Expected::List(b) => vector(numbers(got), b),
        Expected::Matrix(rows) => {
            let Some(got_rows) = got.as_array().filter(|r| r.len() == rows.len()) else {
                return Some(format!("expected {} rows", rows.len()));
            };
            got_rows
                .iter()
                .zip(rows)
                .enumerate()
                .find_map(|(i, (g, w))| vector(numbers(g), w).map(|m| format!("row {i}, {m}")))
        }
        Expected::Text(b) => match got.as_str() {
            Some(a) if a == b => None,
            _ => Some(format!("got {got}, expected \"{b}\"")),
        },
    }
}

/// Runs a scenario file, writes `results.json`, one CSV per integrated
/// worldline and the requested SVGs into `out_dir`, then checks the embedded
/// expectations.
pub fn run_scenario(path: &Path, out_dir: &Path) -> Result<(), CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let scenario = Scenario::parse(&text)?;
    let eval = evaluate(&scenario)?;
    fs::create_dir_all(out_dir)?;
    fs::write(
        out_dir.join("results.json"),
        to_json(&eval.results(&scenario)),
    )?;
    for (name, (_, xi)) in &eval.trajectories {
        let rows: Vec<(f64, Vec<f64>)> = xi
            .samples()
            .iter()
            .map(|s| (s.tau, s.position.coords().to_vec()))
            .collect();
        fs::write(out_dir.join(format!("{name}.csv")), trajectory_csv(&rows))?;
    }
    let base = path.parent().unwrap_or(Path::new("."));
    for req in &scenario.renders {
        let spec_path = base.join(&req.spec);
        let text = fs::read_to_string(&spec_path)
            .map_err(|e| CliError::Io(format!("{}: {e}", spec_path.display())))?;
        let svg = render::render_with(&scenario, &render::parse_spec(&text)?, Some(&eval))?;
        fs::write(out_dir.join(&req.file), svg)?;
    }
    let mismatches = eval.mismatches(&scenario);
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(CliError::Mismatch(mismatches))
    }
}

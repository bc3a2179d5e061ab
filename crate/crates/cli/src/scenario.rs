//! Scenario files: TOML documents naming observers, photons, events and force
//! fields, followed by an ordered list of tasks. The grammar is documented in
//! `scenarios/README.md`.

use std::collections::{BTreeMap, BTreeSet};

use kinspace::{
    frame_at, CircularField, ConstantField, ForceField, KPoint, MinkVector, Photon, Region,
    ZeroField,
};
use serde::Deserialize;

use crate::error::CliError;
use crate::tasks;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default)]
    pub title: Option<String>,
    #[serde(default = "default_c")]
    pub c: f64,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default)]
    pub observers: BTreeMap<String, VectorSpec>,
    #[serde(default)]
    pub photons: BTreeMap<String, VectorSpec>,
    #[serde(default)]
    pub events: BTreeMap<String, VectorSpec>,
    #[serde(default)]
    pub fields: BTreeMap<String, FieldSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
    #[serde(default)]
    pub renders: Vec<RenderRequest>,
}

/// An SVG written next to results.json by `run`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderRequest {
    /// Render spec path, relative to the scenario file.
    pub spec: String,
    /// Output file name inside the output directory.
    pub file: String,
}

fn default_c() -> f64 {
    1.0
}

fn default_n() -> usize {
    2
}

/// Raw Minkowski components `[t, x1, ..., xn]`, or a tagged chart entry.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Raw(Vec<f64>),
    Chart { chart: Chart, coords: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    Minkowski,
    /// `[v1, ..., vn]`, the velocity relative to the origin observer, or the
    /// homogeneous form `[c, v1, ..., vn]`.
    Velocity,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    Zero,
    /// Constant magnitude along `direction` (frame components at `base`),
    /// transported to every point.
    Constant {
        base: String,
        direction: Vec<f64>,
        magnitude: f64,
        mass: Option<f64>,
    },
    Circular {
        center: String,
        magnitude: f64,
        mass: Option<f64>,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub name: String,
    pub op: String,
    #[serde(default)]
    pub args: Vec<String>,
    /// Tangent vector as frame components at the first argument.
    pub vector: Option<Vec<f64>>,
    /// Velocities as frame components at the first argument.
    #[serde(default)]
    pub velocities: Vec<Vec<f64>>,
    pub parameter: Option<f64>,
    #[serde(default)]
    pub tau: Vec<f64>,
    pub step: Option<f64>,
    pub field: Option<String>,
    /// Measure tangent lengths in the scaled space of the scenario `c`.
    #[serde(default)]
    pub scaled: bool,
    #[serde(default)]
    pub expect: BTreeMap<String, Expected>,
    /// Relative tolerance for `expect`, `|a - b| <= tol max(1, |b|)`.
    pub tolerance: Option<f64>,
    /// Per-output overrides of `tolerance`.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Expected {
    Number(f64),
    List(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
    Text(String),
}

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// A validated scenario with its entities built.
pub struct Scenario {
    pub title: Option<String>,
    pub c: f64,
    pub n: usize,
    pub observers: BTreeMap<String, KPoint>,
    pub photons: BTreeMap<String, Photon>,
    pub events: BTreeMap<String, MinkVector>,
    pub fields: BTreeMap<String, Box<dyn ForceField>>,
    pub tasks: Vec<TaskSpec>,
    pub renders: Vec<RenderRequest>,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let file: ScenarioFile =
            toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        Self::build(file)
    }

    pub fn build(file: ScenarioFile) -> Result<Self, CliError> {
        if !(file.c.is_finite() && file.c > 0.0) {
            return invalid(format!("c must be positive and finite, found {}", file.c));
        }
        if !(kinspace::MIN_N..=kinspace::MAX_N).contains(&file.n) {
            return invalid(format!(
                "n must be in {}..={}, found {}",
                kinspace::MIN_N,
                kinspace::MAX_N,
                file.n
            ));
        }
        let mut names = BTreeSet::new();
        let all = file
            .observers
            .keys()
            .chain(file.photons.keys())
            .chain(file.events.keys())
            .chain(file.fields.keys());
        for name in all {
            if !names.insert(name.as_str()) {
                return invalid(format!("name `{name}` is defined twice"));
            }
        }

        let (c, n) = (file.c, file.n);
        let vector = |name: &str, spec: &VectorSpec| -> Result<MinkVector, CliError> {
            let v = match spec {
                VectorSpec::Raw(x) => x.clone(),
                VectorSpec::Chart {
                    chart: Chart::Minkowski,
                    coords,
                } => coords.clone(),
                VectorSpec::Chart {
                    chart: Chart::Velocity,
                    coords,
                } if coords.len() == n => {
                    std::iter::once(c).chain(coords.iter().copied()).collect()
                }
                VectorSpec::Chart {
                    chart: Chart::Velocity,
                    coords,
                } => {
                    if coords.first().is_some_and(|&w| w <= 0.0) {
                        return invalid(format!("`{name}`: homogeneous velocity entry needs a positive first coordinate"));
                    }
                    coords.clone()
                }
            };
            if v.len() != n + 1 {
                return invalid(format!(
                    "`{name}` has {} coordinates, expected {}",
                    v.len(),
                    n + 1
                ));
            }
            MinkVector::from_slice(&v).map_err(|e| CliError::Validation(format!("`{name}`: {e}")))
        };
        let region = |name: &str, v: MinkVector, want: Region| -> Result<KPoint, CliError> {
            let p = KPoint::new(v).map_err(|e| CliError::Validation(format!("`{name}`: {e}")))?;
            if p.region() != want {
                return invalid(format!("`{name}` lies in {}, expected {want}", p.region()));
            }
            Ok(p)
        };

        let mut observers = BTreeMap::new();
        for (name, spec) in &file.observers {
            let p = region(name, vector(name, spec)?, Region::K)?;
            observers.insert(name.clone(), p);
        }
        let mut photons = BTreeMap::new();
        for (name, spec) in &file.photons {
            let v = vector(name, spec)?;
            region(name, v.clone(), Region::BoundaryK)?;
            let f = Photon::new(v).map_err(|e| CliError::Validation(format!("`{name}`: {e}")))?;
            photons.insert(name.clone(), f);
        }
        let mut events = BTreeMap::new();
        for (name, spec) in &file.events {
            events.insert(name.clone(), vector(name, spec)?);
        }

        let mut fields: BTreeMap<String, Box<dyn ForceField>> = BTreeMap::new();
        for (name, spec) in &file.fields {
            let lookup = |key: &str| {
                observers.get(key).cloned().ok_or_else(|| {
                    CliError::Validation(format!(
                        "field `{name}` refers to unknown observer `{key}`"
                    ))
                })
            };
            let wrap = |e: kinspace::Error| CliError::Validation(format!("field `{name}`: {e}"));
            let field: Box<dyn ForceField> = match spec {
                FieldSpec::Zero => Box::new(ZeroField),
                FieldSpec::Constant {
                    base,
                    direction,
                    magnitude,
                    mass,
                } => {
                    let base = lookup(base)?;
                    let dir = frame_combination(&base, direction)
                        .map_err(|m| CliError::Validation(format!("field `{name}`: {m}")))?;
                    let f = ConstantField::new(base, dir, *magnitude, c).map_err(wrap)?;
                    Box::new(match mass {
                        Some(m) => f.with_mass(positive_mass(name, *m)?),
                        None => f,
                    })
                }
                FieldSpec::Circular {
                    center,
                    magnitude,
                    mass,
                } => {
                    let f = CircularField::new(lookup(center)?, *magnitude, c).map_err(wrap)?;
                    Box::new(match mass {
                        Some(m) => f.with_mass(positive_mass(name, *m)?),
                        None => f,
                    })
                }
            };
            fields.insert(name.clone(), field);
        }

        let scenario = Self {
            title: file.title,
            c,
            n,
            observers,
            photons,
            events,
            fields,
            tasks: file.tasks,
            renders: file.renders,
        };
        scenario.check_tasks()?;
        Ok(scenario)
    }

    fn check_tasks(&self) -> Result<(), CliError> {
        let mut seen = BTreeSet::new();
        for task in &self.tasks {
            let safe = |ch: char| ch.is_ascii_alphanumeric() || ch == '_' || ch == '-';
            if task.name.is_empty() || !task.name.chars().all(safe) {
                return invalid(format!(
                    "task name `{}` may only use letters, digits, `_` and `-`",
                    task.name
                ));
            }
            if !seen.insert(task.name.as_str()) {
                return invalid(format!("task name `{}` is used twice", task.name));
            }
            let (lo, hi) = tasks::arity(&task.op).ok_or_else(|| {
                CliError::Validation(format!("task `{}`: unknown op `{}`", task.name, task.op))
            })?;
            if task.args.len() < lo || task.args.len() > hi {
                return invalid(format!(
                    "task `{}`: `{}` takes {lo}..={hi} arguments, found {}",
                    task.name,
                    task.op,
                    task.args.len()
                ));
            }
            for arg in &task.args {
                if !self.defines(arg) {
                    return invalid(format!(
                        "task `{}` refers to undefined entity `{arg}`",
                        task.name
                    ));
                }
            }
            let tols = task.tolerance.iter().chain(task.tolerances.values());
            if let Some(bad) = tols.copied().find(|t| !(t.is_finite() && *t >= 0.0)) {
                return invalid(format!(
                    "task `{}`: tolerance must be finite and non-negative, found {bad}",
                    task.name
                ));
            }
            if let Some(key) = task
                .tolerances
                .keys()
                .find(|k| !task.expect.contains_key(*k))
            {
                return invalid(format!(
                    "task `{}`: tolerance given for `{key}`, which has no expectation",
                    task.name
                ));
            }
            if let Some(field) = &task.field {
                if !self.fields.contains_key(field) {
                    return invalid(format!(
                        "task `{}` refers to undefined field `{field}`",
                        task.name
                    ));
                }
            }
        }
        let mut files = BTreeSet::new();
        for r in &self.renders {
            let plain = !r.file.is_empty()
                && !r.file.contains(['/', '\\'])
                && r.file != "."
                && r.file != "..";
            if !plain {
                return invalid(format!(
                    "render file `{}` must be a plain file name",
                    r.file
                ));
            }
            if r.file == "results.json"
                || r.file.ends_with(".csv")
                || !files.insert(r.file.as_str())
            {
                return invalid(format!(
                    "render file `{}` collides with another output",
                    r.file
                ));
            }
        }
        Ok(())
    }

    fn defines(&self, name: &str) -> bool {
        self.observers.contains_key(name)
            || self.photons.contains_key(name)
            || self.events.contains_key(name)
    }

    /// Any entity as a Minkowski vector: observers and photons by their
    /// stored representatives.
    pub fn vector(&self, name: &str) -> Result<MinkVector, CliError> {
        if let Some(p) = self.observers.get(name) {
            return Ok(p.rep().clone());
        }
        if let Some(f) = self.photons.get(name) {
            return Ok(f.momentum().clone());
        }
        self.events
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Validation(format!("undefined entity `{name}`")))
    }

    /// Any entity as a projective point.
    pub fn point(&self, name: &str) -> Result<KPoint, CliError> {
        if let Some(p) = self.observers.get(name) {
            return Ok(p.clone());
        }
        if let Some(f) = self.photons.get(name) {
            return Ok(f.ideal().clone());
        }
        let v = self.vector(name)?;
        KPoint::new(v).map_err(|e| CliError::Validation(format!("`{name}`: {e}")))
    }

    pub fn observer(&self, name: &str) -> Result<KPoint, CliError> {
        let p = self.point(name)?;
        if p.region() != Region::K {
            return invalid(format!("`{name}` is not an observer"));
        }
        Ok(p)
    }

    pub fn photon(&self, name: &str) -> Result<Photon, CliError> {
        if let Some(f) = self.photons.get(name) {
            return Ok(f.clone());
        }
        let v = self.vector(name)?;
        Photon::new(v).map_err(|e| CliError::Validation(format!("`{name}`: {e}")))
    }
}

/// `sum x_i e_i` over the frame of [`frame_at`] at `base`.
pub fn frame_combination(base: &KPoint, components: &[f64]) -> Result<MinkVector, String> {
    if components.len() != base.n() {
        return Err(format!(
            "expected {} frame components, found {}",
            base.n(),
            components.len()
        ));
    }
    let frame = frame_at(base);
    let mut v = MinkVector::zeros(base.n()).map_err(|e| e.to_string())?;
    for (e, &x) in frame[1..].iter().zip(components) {
        v = v.add_scaled(x, e);
    }
    Ok(v)
}

fn positive_mass(field: &str, m: f64) -> Result<f64, CliError> {
    if m.is_finite() && m > 0.0 {
        Ok(m)
    } else {
        invalid(format!(
            "field `{field}`: mass must be positive and finite, found {m}"
        ))
    }
}

fn invalid<T>(message: String) -> Result<T, CliError> {
    Err(CliError::Validation(message))
}

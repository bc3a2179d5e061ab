//! Task dispatch: each op reads its arguments from the scenario and returns a
//! map of named outputs.

use kinspace::{
    acceleration, boost_between, busemann, causality_verdict, classify, distance, elliptic_about,
    energy_ratio, eta, exp_map, frequency_ratio, geodesic_through, gram, hyperbolic_motion,
    integrate_force, length_contraction, log_map, lorentz_factor, midpoint, mobius_add,
    oriented_area, orthonormalize, parabolic_fixing, parallel_transport, polar_point, project,
    reflection_in_point, relative_velocity, scalar_velocity, signed_distance, tance, time_dilation,
    velocity_add, velocity_add_via_components, velocity_add_via_parallelogram,
    velocity_to_rapidity, vertices, wigner_rotation, KCurve, KPoint, LorentzMap, MinkVector, Scale,
    TangentVec, Velocity, Worldline,
};
use serde_json::{Map, Value};

use crate::error::CliError;
use crate::scenario::{frame_combination, Scenario, TaskSpec};

/// Accepted argument counts per op.
pub fn arity(op: &str) -> Option<(usize, usize)> {
    let n = match op {
        "hyperbolic_motion" => (0, 0),
        "classify" | "exp" | "velocity_add" | "rapidity" | "elliptic" | "parabolic"
        | "reflection_point" | "integrate" => (1, 1),
        "inner" | "project" | "tance" | "distance" | "lorentz_factor" | "scalar_velocity"
        | "log" | "transport" | "midpoint" | "vertices" | "polar_point" | "relative_velocity" => {
            (2, 2)
        }
        "boost" => (2, 3),
        "time_dilation" | "length_contraction" | "eta" | "signed_distance" | "mobius_add"
        | "wigner" | "area" | "frequency_ratio" | "busemann" | "energy_ratio" => (3, 3),
        "gram" | "orthonormalize" => (1, kinspace::MAX_N + 1),
        _ => return None,
    };
    Some(n)
}

/// What a task produced: named outputs, and for `integrate` the computed
/// curve and worldline.
pub struct TaskOutput {
    pub outputs: Map<String, Value>,
    pub trajectory: Option<(KCurve, Worldline)>,
}

struct Out<'a> {
    task: &'a str,
    map: Map<String, Value>,
}

impl<'a> Out<'a> {
    fn new(task: &'a str) -> Self {
        Self {
            task,
            map: Map::new(),
        }
    }

    fn finite(&self, key: &str, x: f64) -> Result<Value, CliError> {
        serde_json::Number::from_f64(x)
            .map(Value::Number)
            .ok_or_else(|| {
                CliError::Numeric(format!(
                    "task `{}`: output `{key}` is not finite ({x})",
                    self.task
                ))
            })
    }

    fn num(&mut self, key: &str, x: f64) -> Result<(), CliError> {
        let v = self.finite(key, x)?;
        self.map.insert(key.into(), v);
        Ok(())
    }

    fn list(&mut self, key: &str, xs: &[f64]) -> Result<(), CliError> {
        let v = xs
            .iter()
            .map(|&x| self.finite(key, x))
            .collect::<Result<Vec<_>, _>>()?;
        self.map.insert(key.into(), Value::Array(v));
        Ok(())
    }

    fn rows(&mut self, key: &str, rows: &[Vec<f64>]) -> Result<(), CliError> {
        let mut out = Vec::new();
        for r in rows {
            out.push(Value::Array(
                r.iter()
                    .map(|&x| self.finite(key, x))
                    .collect::<Result<Vec<_>, _>>()?,
            ));
        }
        self.map.insert(key.into(), Value::Array(out));
        Ok(())
    }

    fn matrix(&mut self, key: &str, m: &LorentzMap) -> Result<(), CliError> {
        let m = m.matrix();
        let rows: Vec<Vec<f64>> = (0..m.nrows())
            .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
            .collect();
        self.rows(key, &rows)
    }

    fn text(&mut self, key: &str, s: impl Into<String>) {
        self.map.insert(key.into(), Value::String(s.into()));
    }
}

fn label(x: impl std::fmt::Debug) -> String {
    let s = format!("{x:?}");
    let mut out = String::new();
    for (i, ch) in s.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            out.push('_');
        }
        out.push(ch.to_ascii_lowercase());
    }
    out
}

pub fn execute(scenario: &Scenario, task: &TaskSpec) -> Result<TaskOutput, CliError> {
    let name = task.name.as_str();
    let lib = |e: kinspace::Error| CliError::from_library(name, e);
    let arg = |i: usize| task.args[i].as_str();
    let need =
        |what: &str| CliError::Validation(format!("task `{name}`: `{}` needs `{what}`", task.op));
    let scale = if task.scaled {
        Scale::Scaled(scenario.c)
    } else {
        Scale::Unit
    };
    let c = scenario.c;
    let mut out = Out::new(name);
    let mut trajectory = None;

    let tangent = |base: &KPoint| -> Result<TangentVec, CliError> {
        let comps = task.vector.as_ref().ok_or_else(|| need("vector"))?;
        let v = frame_combination(base, comps)
            .map_err(|m| CliError::Validation(format!("task `{name}`: {m}")))?;
        TangentVec::new(base.clone(), v, scale).map_err(lib)
    };
    let velocity = |base: &KPoint, i: usize| -> Result<Velocity, CliError> {
        let comps = task.velocities.get(i).ok_or_else(|| need("velocities"))?;
        Velocity::from_components(base.clone(), comps, c).map_err(lib)
    };

    match task.op.as_str() {
        "inner" => {
            let (u, v) = (scenario.vector(arg(0))?, scenario.vector(arg(1))?);
            out.num("value", u.form(&v))?;
        }
        "classify" => {
            let u = scenario.vector(arg(0))?;
            let class = classify(&u, kinspace::tolerance::EPS_CLASS);
            out.text("tag", label(class.tag));
            out.text("orientation", label(class.orientation));
            out.num("norm_sq", u.norm_sq())?;
        }
        "gram" => {
            let vs = task
                .args
                .iter()
                .map(|a| scenario.vector(a))
                .collect::<Result<Vec<_>, _>>()?;
            let g = gram(&vs).map_err(lib)?;
            let k = g.size();
            let rows: Vec<Vec<f64>> = (0..k)
                .map(|i| (0..k).map(|j| g.get(i, j)).collect())
                .collect();
            out.rows("matrix", &rows)?;
            out.num("det", g.det())?;
        }
        "orthonormalize" => {
            let vs = task
                .args
                .iter()
                .map(|a| scenario.vector(a))
                .collect::<Result<Vec<_>, _>>()?;
            let basis = orthonormalize(&vs).map_err(lib)?;
            let rows: Vec<Vec<f64>> = basis.iter().map(|b| b.coords().to_vec()).collect();
            out.rows("basis", &rows)?;
            out.list(
                "norm_sq",
                &basis.iter().map(|b| b.norm_sq()).collect::<Vec<_>>(),
            )?;
        }
        "project" => {
            let (p, v) = (scenario.vector(arg(0))?, scenario.vector(arg(1))?);
            let proj = project(&p, &v).map_err(lib)?;
            out.list("tangential", proj.tangential.coords())?;
            out.list("normal", proj.normal.coords())?;
        }
        "tance" => {
            let t = tance(&scenario.point(arg(0))?, &scenario.point(arg(1))?).map_err(lib)?;
            out.num("value", t.value())?;
        }
        "distance" => {
            let d =
                distance(&scenario.observer(arg(0))?, &scenario.observer(arg(1))?).map_err(lib)?;
            out.num("value", d)?;
        }
        "lorentz_factor" => {
            let g = lorentz_factor(&scenario.observer(arg(0))?, &scenario.observer(arg(1))?)
                .map_err(lib)?;
            out.num("value", g)?;
        }
        "scalar_velocity" => {
            let v = scalar_velocity(&scenario.observer(arg(0))?, &scenario.observer(arg(1))?, c)
                .map_err(lib)?;
            out.num("value", v)?;
        }
        "time_dilation" => {
            let (p, q) = (scenario.observer(arg(0))?, scenario.observer(arg(1))?);
            let r = time_dilation(&p, &q, &scenario.vector(arg(2))?).map_err(lib)?;
            out.list("ratio", &[r.a, r.b])?;
            if let Some(v) = r.value() {
                out.num("value", v)?;
            }
        }
        "length_contraction" => {
            let (p, q) = (scenario.observer(arg(0))?, scenario.observer(arg(1))?);
            out.num(
                "value",
                length_contraction(&p, &q, &scenario.vector(arg(2))?).map_err(lib)?,
            )?;
        }
        "eta" => {
            let (p, q, u) = (
                scenario.observer(arg(0))?,
                scenario.observer(arg(1))?,
                scenario.point(arg(2))?,
            );
            out.num("value", eta(&p, &q, &u).map_err(lib)?)?;
            out.text(
                "verdict",
                label(causality_verdict(&p, &q, &u).map_err(lib)?),
            );
        }
        "exp" => {
            let p = scenario.observer(arg(0))?;
            out.list("point", exp_map(&tangent(&p)?).rep().coords())?;
        }
        "log" => {
            let (p, q) = (scenario.observer(arg(0))?, scenario.observer(arg(1))?);
            let w = log_map(&p, &q, scale).map_err(lib)?;
            out.list("components", &frame_components(&p, w.vec()))?;
            out.num("length", w.norm())?;
        }
        "transport" => {
            let (p, q) = (scenario.observer(arg(0))?, scenario.observer(arg(1))?);
            let w = parallel_transport(&tangent(&p)?, &q).map_err(lib)?;
            out.list("components", &frame_components(&q, w.vec()))?;
            out.list("vector", w.vec().coords())?;
            out.num("length", w.norm())?;
        }
        "midpoint" => {
            let m =
                midpoint(&scenario.observer(arg(0))?, &scenario.observer(arg(1))?).map_err(lib)?;
            out.list("point", m.rep().coords())?;
        }
        "vertices" => {
            let g = geodesic_through(&scenario.point(arg(0))?, &scenario.point(arg(1))?)
                .map_err(lib)?;
            let (a, b) = vertices(&g).map_err(lib)?;
            out.list("first", a.rep().coords())?;
            out.list("second", b.rep().coords())?;
        }
        "polar_point" => {
            let g = geodesic_through(&scenario.point(arg(0))?, &scenario.point(arg(1))?)
                .map_err(lib)?;
            out.list("point", polar_point(&g).map_err(lib)?.rep().coords())?;
        }
        "signed_distance" => {
            let g = geodesic_through(&scenario.point(arg(0))?, &scenario.point(arg(1))?)
                .map_err(lib)?;
            out.num(
                "value",
                signed_distance(&g, &scenario.observer(arg(2))?).map_err(lib)?,
            )?;
        }
        "relative_velocity" => {
            let v = relative_velocity(&scenario.observer(arg(0))?, &scenario.point(arg(1))?, c)
                .map_err(lib)?;
            out.list("components", &v.components())?;
            out.num("speed", v.speed())?;
        }
        "velocity_add" => {
            let p = scenario.observer(arg(0))?;
            let (v1, v2) = (velocity(&p, 0)?, velocity(&p, 1)?);
            let sum = velocity_add(&v1, &v2).map_err(lib)?;
            let para = velocity_add_via_parallelogram(&v1, &v2).map_err(lib)?;
            let comp = velocity_add_via_components(&v1, &v2).map_err(lib)?;
            out.list("sum", &sum.components())?;
            out.list("sum_parallelogram", &para.components())?;
            out.list("sum_components", &comp.components())?;
            out.num("speed", sum.speed())?;
        }
        "rapidity" => {
            let p = scenario.observer(arg(0))?;
            let w = velocity_to_rapidity(&velocity(&p, 0)?).map_err(lib)?;
            out.list("components", &frame_components(&p, w.vec()))?;
            out.num("rapidity", w.rapidity())?;
        }
        "mobius_add" => {
            let (o, p, q) = (
                scenario.observer(arg(0))?,
                scenario.observer(arg(1))?,
                scenario.observer(arg(2))?,
            );
            out.list("point", mobius_add(&o, &p, &q).map_err(lib)?.rep().coords())?;
        }
        "boost" => {
            let (p, q) = (scenario.observer(arg(0))?, scenario.observer(arg(1))?);
            let m = boost_between(&p, &q).map_err(lib)?;
            out.matrix("matrix", &m)?;
            out.text("class", label(m.class()));
            out.num("defect", m.defect())?;
            if task.args.len() == 3 {
                out.list(
                    "image",
                    m.apply(&scenario.vector(arg(2))?).map_err(lib)?.coords(),
                )?;
            }
        }
        "wigner" => {
            let (a, b, d) = (
                scenario.observer(arg(0))?,
                scenario.observer(arg(1))?,
                scenario.observer(arg(2))?,
            );
            let w = wigner_rotation(&a, &b, &d).map_err(lib)?;
            out.num("angle", w.angle)?;
            out.num("area", oriented_area(&a, &b, &d).map_err(lib)?.value())?;
            out.text("class", label(w.map.class()));
            out.matrix("matrix", &w.map)?;
        }
        "area" => {
            let (a, b, d) = (
                scenario.observer(arg(0))?,
                scenario.observer(arg(1))?,
                scenario.observer(arg(2))?,
            );
            out.num("value", oriented_area(&a, &b, &d).map_err(lib)?.value())?;
        }
        "elliptic" => {
            let theta = task.parameter.ok_or_else(|| need("parameter"))?;
            let m = elliptic_about(&scenario.observer(arg(0))?, theta).map_err(lib)?;
            out.matrix("matrix", &m)?;
            out.text("class", label(m.class()));
        }
        "parabolic" => {
            let s = task.parameter.ok_or_else(|| need("parameter"))?;
            let m = parabolic_fixing(scenario.photon(arg(0))?.ideal(), s).map_err(lib)?;
            out.matrix("matrix", &m)?;
            out.text("class", label(m.class()));
        }
        "reflection_point" => {
            let m = reflection_in_point(&scenario.observer(arg(0))?).map_err(lib)?;
            out.matrix("matrix", &m)?;
            out.text("class", label(m.class()));
        }
        "frequency_ratio" | "busemann" => {
            let f = scenario.photon(arg(0))?;
            let (p, q) = (scenario.observer(arg(1))?, scenario.observer(arg(2))?);
            let v = if task.op == "busemann" {
                busemann(&f, &p, &q)
            } else {
                frequency_ratio(&f, &p, &q)
            };
            out.num("value", v.map_err(lib)?)?;
        }
        "energy_ratio" => {
            let (f, p, q) = (
                scenario.vector(arg(0))?,
                scenario.vector(arg(1))?,
                scenario.vector(arg(2))?,
            );
            out.num("value", energy_ratio(&f, &p, &q).map_err(lib)?)?;
        }
        "hyperbolic_motion" => {
            let a = task.parameter.ok_or_else(|| need("parameter"))?;
            let &[tau] = task.tau.as_slice() else {
                return Err(need("tau = [t]"));
            };
            let (x, u) = hyperbolic_motion(scenario.n, a, c, tau).map_err(lib)?;
            out.list("position", x.coords())?;
            out.list("four_velocity", u.coords())?;
        }
        "integrate" => {
            let field = task.field.as_ref().ok_or_else(|| need("field"))?;
            let field = scenario.fields[field].as_ref();
            let &[t0, t1] = task.tau.as_slice() else {
                return Err(need("tau = [start, end]"));
            };
            let step = task.step.ok_or_else(|| need("step"))?;
            let start = scenario.observer(arg(0))?;
            let (curve, xi) = integrate_force(field, &start, t0, t1, step, c).map_err(lib)?;
            let last = xi.samples().last().expect("integration yields samples");
            let drift = xi
                .samples()
                .iter()
                .map(|s| (s.four_velocity.norm_sq() + c * c).abs() / (c * c))
                .fold(0.0, f64::max);
            let acc = acceleration(&curve, last.tau, c).map_err(lib)?;
            out.num("samples", xi.len() as f64)?;
            out.num("final_tau", last.tau)?;
            out.list("final_position", last.position.coords())?;
            out.list("final_four_velocity", last.four_velocity.coords())?;
            out.list(
                "final_point",
                curve
                    .points()
                    .last()
                    .expect("nonempty curve")
                    .rep()
                    .coords(),
            )?;
            out.num("final_acceleration", acc.norm_sq().max(0.0).sqrt())?;
            out.num("max_drift", drift)?;
            out.text("csv", format!("{name}.csv"));
            trajectory = Some((curve, xi));
        }
        other => {
            return Err(CliError::Validation(format!(
                "task `{name}`: unknown op `{other}`"
            )));
        }
    }
    Ok(TaskOutput {
        outputs: out.map,
        trajectory,
    })
}

/// Components of a tangent vector at `p` in the frame of [`kinspace::frame_at`].
fn frame_components(p: &KPoint, v: &MinkVector) -> Vec<f64> {
    kinspace::frame_at(p)[1..]
        .iter()
        .map(|e| v.form(e))
        .collect()
}

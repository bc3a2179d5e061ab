//! SVG drawings of a scenario in the Klein or Poincare disk.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;

use kinspace::{
    circle_point, geodesic_through, horocycle_through, vertices, wigner_rotation, DiskChart,
    Hypercycle, KPoint, Region,
};
use serde::Deserialize;

use crate::error::CliError;
use crate::output::format_f64;
use crate::run::{evaluate, Evaluation};
use crate::scenario::Scenario;

/// Samples per curved locus.
pub const LOCUS_SAMPLES: usize = 256;
const MAX_WORLDLINE_POINTS: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Projection {
    #[default]
    Poincare,
    Klein,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Canvas {
    #[serde(default = "default_size")]
    pub width: u32,
    #[serde(default = "default_size")]
    pub height: u32,
}

fn default_size() -> u32 {
    600
}

impl Default for Canvas {
    fn default() -> Self {
        Self {
            width: 600,
            height: 600,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderSpec {
    #[serde(default)]
    pub projection: Projection,
    #[serde(default)]
    pub canvas: Canvas,
    /// Observer drawn at the disk center; the origin observer if absent.
    pub center: Option<String>,
    #[serde(default)]
    pub elements: Vec<Element>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Element {
    #[serde(flatten)]
    pub shape: Shape,
    #[serde(default)]
    pub stroke: Option<String>,
    #[serde(default)]
    pub fill: Option<String>,
    #[serde(default)]
    pub width: Option<f64>,
    #[serde(default)]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Shape {
    Point {
        at: String,
    },
    /// The full geodesic through two points.
    Geodesic {
        through: [String; 2],
    },
    Segment {
        between: [String; 2],
    },
    Horocycle {
        photon: String,
        through: String,
    },
    Hypercycle {
        axis: [String; 2],
        through: String,
    },
    Circle {
        center: String,
        radius: f64,
    },
    /// Sides plus the Wigner angle annotation.
    Triangle {
        vertices: [String; 3],
    },
    Worldline {
        task: String,
    },
}

struct Plot {
    chart: DiskChart,
    projection: Projection,
    cx: f64,
    cy: f64,
    radius: f64,
}

impl Plot {
    fn disk(&self, p: &KPoint) -> Result<(f64, f64), CliError> {
        match self.projection {
            Projection::Klein => self.chart.klein(p),
            Projection::Poincare => self.chart.poincare(p),
        }
        .map_err(|e| CliError::Validation(e.to_string()))
    }

    fn screen(&self, z: (f64, f64)) -> (f64, f64) {
        (self.cx + self.radius * z.0, self.cy - self.radius * z.1)
    }

    fn point(&self, p: &KPoint) -> Result<(f64, f64), CliError> {
        Ok(self.screen(self.disk(p)?))
    }

    fn path(&self, points: &[(f64, f64)], closed: bool) -> String {
        let mut d = String::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            let _ = write!(d, "{}{x:.3},{y:.3}", if i == 0 { "M" } else { " L" });
        }
        if closed {
            d.push_str(" Z");
        }
        d
    }

    /// The geodesic between two points of the closed disk.
    fn geodesic(&self, a: &KPoint, b: &KPoint) -> Result<String, CliError> {
        let (za, zb) = (self.disk(a)?, self.disk(b)?);
        let (sa, sb) = (self.screen(za), self.screen(zb));
        if self.projection == Projection::Klein {
            return Ok(format!("M{:.3},{:.3} L{:.3},{:.3}", sa.0, sa.1, sb.0, sb.1));
        }
        // Poincare: arc of the circle through a, b and their inversions in the
        // unit circle; a straight line when the geodesic is a diameter.
        let cross = za.0 * zb.1 - za.1 * zb.0;
        let scale = (za.0.hypot(za.1) * zb.0.hypot(zb.1)).max(1e-300);
        if cross.abs() <= 1e-12 * scale {
            return Ok(format!("M{:.3},{:.3} L{:.3},{:.3}", sa.0, sa.1, sb.0, sb.1));
        }
        let center = orthogonal_center(za, zb);
        let r = ((center.0 * center.0 + center.1 * center.1) - 1.0)
            .max(0.0)
            .sqrt();
        let u = (za.0 - center.0, za.1 - center.1);
        let v = (zb.0 - center.0, zb.1 - center.1);
        // The screen flips y, so a clockwise turn in the disk is a positive
        // (sweep = 1) angle in SVG.
        let sweep = u.0 * v.1 - u.1 * v.0 < 0.0;
        Ok(format!(
            "M{:.3},{:.3} A{:.3},{:.3} 0 0 {} {:.3},{:.3}",
            sa.0,
            sa.1,
            r * self.radius,
            r * self.radius,
            u8::from(sweep),
            sb.0,
            sb.1
        ))
    }
}

/// Center of the circle through `a` and `b` orthogonal to the unit circle.
fn orthogonal_center(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    // |x - c|^2 = |c|^2 - 1 at x = a and x = b gives 2 x.c = |x|^2 + 1.
    let (ra, rb) = (
        (a.0 * a.0 + a.1 * a.1 + 1.0) / 2.0,
        (b.0 * b.0 + b.1 * b.1 + 1.0) / 2.0,
    );
    let det = a.0 * b.1 - a.1 * b.0;
    ((ra * b.1 - rb * a.1) / det, (a.0 * rb - b.0 * ra) / det)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn render(scenario: &Scenario, spec: &RenderSpec) -> Result<String, CliError> {
    render_with(scenario, spec, None)
}

/// As [`render`], reusing task results when the caller already has them.
pub fn render_with(
    scenario: &Scenario,
    spec: &RenderSpec,
    done: Option<&Evaluation>,
) -> Result<String, CliError> {
    if scenario.n != 2 {
        return Err(CliError::Validation(format!(
            "rendering needs n = 2, found {}",
            scenario.n
        )));
    }
    let lib = |e: kinspace::Error| CliError::Validation(e.to_string());
    let center = match &spec.center {
        Some(name) => scenario.observer(name)?,
        None => KPoint::origin(2).map_err(lib)?,
    };
    let (w, h) = (f64::from(spec.canvas.width), f64::from(spec.canvas.height));
    if w < 1.0 || h < 1.0 {
        return Err(CliError::Validation("canvas must be at least 1x1".into()));
    }
    let cv = Plot {
        chart: DiskChart::centered(&center).map_err(lib)?,
        projection: spec.projection,
        cx: w / 2.0,
        cy: h / 2.0,
        radius: 0.45 * w.min(h),
    };
    let needs_tasks = spec
        .elements
        .iter()
        .any(|e| matches!(e.shape, Shape::Worldline { .. }));
    let owned = match done {
        None if needs_tasks => Some(evaluate(scenario)?),
        _ => None,
    };
    let eval = done.or(owned.as_ref());

    let mut body = String::new();
    let _ = writeln!(
        body,
        r#"<circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="none" stroke="black" stroke-width="1"/>"#,
        cv.cx, cv.cy, cv.radius
    );
    for el in &spec.elements {
        let stroke = escape(el.stroke.as_deref().unwrap_or("black"));
        let width = el.width.unwrap_or(1.0);
        let curve = |d: String, fill: &str| {
            format!(
                r#"<path d="{d}" fill="{}" stroke="{stroke}" stroke-width="{width:.3}"/>"#,
                escape(fill)
            )
        };
        let fill = el.fill.as_deref().unwrap_or("none");
        let mut anchor = None;
        match &el.shape {
            Shape::Point { at } => {
                let p = scenario.point(at)?;
                if p.region() == Region::G {
                    return Err(CliError::Validation(format!(
                        "`{at}` lies outside the closed disk"
                    )));
                }
                let s = cv.point(&p)?;
                let dot_fill = escape(el.fill.as_deref().unwrap_or("black"));
                let _ = writeln!(
                    body,
                    r#"<circle cx="{:.3}" cy="{:.3}" r="3.000" fill="{dot_fill}" stroke="{stroke}" stroke-width="{width:.3}"/>"#,
                    s.0, s.1
                );
                anchor = Some(s);
            }
            Shape::Geodesic { through } => {
                let g =
                    geodesic_through(&scenario.point(&through[0])?, &scenario.point(&through[1])?)
                        .map_err(lib)?;
                let (a, b) = vertices(&g).map_err(lib)?;
                let _ = writeln!(body, "{}", curve(cv.geodesic(&a, &b)?, "none"));
            }
            Shape::Segment { between } => {
                let (a, b) = (scenario.point(&between[0])?, scenario.point(&between[1])?);
                let _ = writeln!(body, "{}", curve(cv.geodesic(&a, &b)?, "none"));
                anchor = Some(midscreen(cv.point(&a)?, cv.point(&b)?));
            }
            Shape::Horocycle { photon, through } => {
                let f = scenario.photon(photon)?;
                let h = horocycle_through(f.ideal(), &scenario.observer(through)?).map_err(lib)?;
                let ideal = cv.point(f.ideal())?;
                let mut pts = vec![ideal];
                for i in 0..LOCUS_SAMPLES {
                    let phi =
                        -FRAC_PI_2 + std::f64::consts::PI * (i as f64 + 0.5) / LOCUS_SAMPLES as f64;
                    pts.push(cv.point(&h.point_at(phi.tan()).map_err(lib)?)?);
                }
                let _ = writeln!(body, "{}", curve(cv.path(&pts, true), fill));
            }
            Shape::Hypercycle { axis, through } => {
                let g = geodesic_through(&scenario.point(&axis[0])?, &scenario.point(&axis[1])?)
                    .map_err(lib)?;
                let hc = Hypercycle::through(g, &scenario.observer(through)?).map_err(lib)?;
                // Uniform in the Klein coordinate of the foot point, with the
                // ends pushed far enough out to land on the circle.
                let mut pts = Vec::with_capacity(LOCUS_SAMPLES + 2);
                pts.push(cv.point(&hc.point_at(-60.0).map_err(lib)?)?);
                for i in 0..LOCUS_SAMPLES {
                    let u = -1.0 + 2.0 * (i as f64 + 0.5) / LOCUS_SAMPLES as f64;
                    pts.push(cv.point(&hc.point_at(u.atanh()).map_err(lib)?)?);
                }
                pts.push(cv.point(&hc.point_at(60.0).map_err(lib)?)?);
                let _ = writeln!(body, "{}", curve(cv.path(&pts, false), "none"));
            }
            Shape::Circle { center, radius } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(CliError::Validation(format!(
                        "circle radius must be positive, found {radius}"
                    )));
                }
                let c = scenario.observer(center)?;
                let mut pts = Vec::with_capacity(LOCUS_SAMPLES);
                for i in 0..LOCUS_SAMPLES {
                    let theta = std::f64::consts::TAU * i as f64 / LOCUS_SAMPLES as f64;
                    pts.push(cv.point(&circle_point(&c, *radius, theta).map_err(lib)?)?);
                }
                let _ = writeln!(body, "{}", curve(cv.path(&pts, true), fill));
                anchor = Some(cv.point(&c)?);
            }
            Shape::Triangle { vertices: names } => {
                let v: Vec<KPoint> = names
                    .iter()
                    .map(|n| scenario.observer(n))
                    .collect::<Result<_, _>>()?;
                for i in 0..3 {
                    let _ = writeln!(
                        body,
                        "{}",
                        curve(cv.geodesic(&v[i], &v[(i + 1) % 3])?, "none")
                    );
                }
                let angle = wigner_rotation(&v[0], &v[1], &v[2]).map_err(lib)?.angle;
                let s: Vec<(f64, f64)> = v.iter().map(|p| cv.point(p)).collect::<Result<_, _>>()?;
                let at = (
                    (s[0].0 + s[1].0 + s[2].0) / 3.0,
                    (s[0].1 + s[1].1 + s[2].1) / 3.0,
                );
                let _ = writeln!(
                    body,
                    r#"<text x="{:.3}" y="{:.3}" font-size="12" class="wigner-angle">θ = {}</text>"#,
                    at.0,
                    at.1,
                    format_f64(angle)
                );
            }
            Shape::Worldline { task } => {
                let eval = eval.expect("tasks evaluated when a worldline is drawn");
                let (curve_k, _) = eval.trajectories.get(task).ok_or_else(|| {
                    CliError::Validation(format!("task `{task}` has no trajectory"))
                })?;
                let points = curve_k.points();
                let stride = points.len().div_ceil(MAX_WORLDLINE_POINTS).max(1);
                let mut pts: Vec<(f64, f64)> = points
                    .iter()
                    .step_by(stride)
                    .map(|p| cv.point(p))
                    .collect::<Result<_, _>>()?;
                if (points.len() - 1) % stride != 0 {
                    pts.push(cv.point(points.last().expect("non-empty trajectory"))?);
                }
                let _ = writeln!(body, "{}", curve(cv.path(&pts, false), "none"));
                anchor = pts.last().copied();
            }
        }
        if let (Some(text), Some((x, y))) = (&el.label, anchor) {
            let _ = writeln!(
                body,
                r#"<text x="{:.3}" y="{:.3}" font-size="12">{}</text>"#,
                x + 5.0,
                y - 5.0,
                escape(text)
            );
        }
    }

    Ok(format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n\
         {body}</svg>\n",
        spec.canvas.width, spec.canvas.height, spec.canvas.width, spec.canvas.height
    ))
}

fn midscreen(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0)
}

pub fn parse_spec(text: &str) -> Result<RenderSpec, CliError> {
    toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_circle_passes_through_both_points() {
        let (a, b) = ((0.3, 0.1), (-0.2, 0.5));
        let c = orthogonal_center(a, b);
        let r2 = c.0 * c.0 + c.1 * c.1 - 1.0;
        for z in [a, b] {
            let d2 = (z.0 - c.0).powi(2) + (z.1 - c.1).powi(2);
            assert!((d2 - r2).abs() < 1e-12);
        }
    }

    #[test]
    fn quarter_arc_bends_toward_the_center() {
        // Ideal points 1 and i: the arc is centered at 1 + i and runs clockwise.
        let c = orthogonal_center((1.0, 0.0), (0.0, 1.0));
        assert!((c.0 - 1.0).abs() < 1e-12 && (c.1 - 1.0).abs() < 1e-12);
    }

    /// Center of an SVG arc from its endpoint parameters (small arc, equal radii).
    fn svg_arc_center(from: (f64, f64), to: (f64, f64), r: f64, sweep: bool) -> (f64, f64) {
        let (hx, hy) = ((from.0 - to.0) / 2.0, (from.1 - to.1) / 2.0);
        let h2 = hx * hx + hy * hy;
        let k = ((r * r - h2) / h2).max(0.0).sqrt() * if sweep { 1.0 } else { -1.0 };
        (
            k * hy + (from.0 + to.0) / 2.0,
            -k * hx + (from.1 + to.1) / 2.0,
        )
    }

    #[test]
    fn poincare_arcs_use_the_orthogonal_circle() {
        let plot = Plot {
            chart: DiskChart::centered(&KPoint::origin(2).unwrap()).unwrap(),
            projection: Projection::Poincare,
            cx: 300.0,
            cy: 300.0,
            radius: 270.0,
        };
        let pts = [
            [1.25, 0.75, 0.0],
            [1.25, 0.0, 0.75],
            [2.0, -1.0, 0.5],
            [3.0, 1.0, -2.0],
        ];
        for a in &pts {
            for b in &pts {
                if a == b {
                    continue;
                }
                let (p, q) = (
                    KPoint::from_coords(a).unwrap(),
                    KPoint::from_coords(b).unwrap(),
                );
                let d = plot.geodesic(&p, &q).unwrap();
                let nums: Vec<f64> = d
                    .split(|ch: char| !(ch.is_ascii_digit() || ch == '.' || ch == '-'))
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().unwrap())
                    .collect();
                let [x1, y1, r, _, _, _, sweep, x2, y2] = nums[..] else {
                    panic!("unexpected path {d}");
                };
                let got = svg_arc_center((x1, y1), (x2, y2), r, sweep == 1.0);
                let want = plot.screen(orthogonal_center(
                    plot.disk(&p).unwrap(),
                    plot.disk(&q).unwrap(),
                ));
                assert!(
                    (got.0 - want.0).hypot(got.1 - want.1) < 0.05,
                    "{d}: {got:?} vs {want:?}"
                );
            }
        }
    }

    #[test]
    fn labels_are_escaped() {
        assert_eq!(escape("a<b & \"c\""), "a&lt;b &amp; &quot;c&quot;");
    }
}

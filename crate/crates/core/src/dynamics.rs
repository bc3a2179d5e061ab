//! Proper-time worldlines and their curves of four-velocity directions.
//!
//! A worldline `xi` parameterized by proper time gives the curve
//! `zeta = P R xi'` in kinematic space; conversely a curve in kinematic space
//! lifts to `zeta0` with `<zeta0, zeta0> = -c^2` and integrates to a worldline
//! starting at the origin event.

use crate::error::{Error, Region, Result};
use crate::geodesics::{
    exp_map, log_map, lorentz_cross, parallel_transport, require_plane, Scale, TangentVec,
};
use crate::kinematic::{check_c, unit_distance, KPoint};
use crate::minkowski::MinkVector;
use crate::tolerance::{BLOW_UP_RAPIDITY, EPS_DYN};

/// A sampled curve in K, interpolated by geodesic segments.
#[derive(Debug, Clone, PartialEq)]
pub struct KCurve {
    taus: Vec<f64>,
    points: Vec<KPoint>,
}

fn check_times(taus: &[f64]) -> Result<()> {
    if taus.is_empty() {
        return Err(Error::EmptyCurve);
    }
    if taus.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite);
    }
    if let Some(i) = taus.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "sample times must increase strictly (sample {})",
            i + 1
        )));
    }
    Ok(())
}

impl KCurve {
    pub fn new(samples: Vec<(f64, KPoint)>) -> Result<Self> {
        let (taus, points): (Vec<f64>, Vec<KPoint>) = samples.into_iter().unzip();
        check_times(&taus)?;
        for p in &points {
            p.ensure(Region::K)?;
            p.ensure_same_dim(&points[0])?;
        }
        Ok(Self { taus, points })
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn points(&self) -> &[KPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }

    fn range_error(&self, tau: f64) -> Error {
        Error::OutOfRange {
            tau,
            lo: self.taus[0],
            hi: self.taus[self.len() - 1],
        }
    }

    /// Point at proper time `tau`, on the geodesic between the neighbouring samples.
    pub fn point_at(&self, tau: f64) -> Result<KPoint> {
        let last = self.len() - 1;
        if !(tau >= self.taus[0] && tau <= self.taus[last]) {
            return Err(self.range_error(tau));
        }
        let i = match self.taus.binary_search_by(|t| t.total_cmp(&tau)) {
            Ok(i) => return Ok(self.points[i].clone()),
            Err(i) => i - 1,
        };
        let s = (tau - self.taus[i]) / (self.taus[i + 1] - self.taus[i]);
        let w = log_map(&self.points[i], &self.points[i + 1], Scale::Unit)?;
        Ok(exp_map(&w.scaled_by(s)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorldlineSample {
    pub tau: f64,
    pub position: MinkVector,
    pub four_velocity: MinkVector,
}

/// A worldline sampled in proper time.
#[derive(Debug, Clone, PartialEq)]
pub struct Worldline {
    samples: Vec<WorldlineSample>,
    c: f64,
}

impl Worldline {
    /// Validates proper-time normalization `<xi', xi'> = -c^2` (relative
    /// tolerance `EPS_DYN`) and future orientation.
    pub fn new(samples: Vec<WorldlineSample>, c: f64) -> Result<Self> {
        check_c(c)?;
        let taus: Vec<f64> = samples.iter().map(|s| s.tau).collect();
        check_times(&taus)?;
        let dim = samples[0].position.dim();
        for (index, s) in samples.iter().enumerate() {
            for v in [&s.position, &s.four_velocity] {
                if v.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.dim(),
                    });
                }
            }
            let defect = (s.four_velocity.norm_sq() + c * c).abs() / (c * c);
            if defect > EPS_DYN || s.four_velocity.time() <= 0.0 {
                return Err(Error::NotNormalized { index, defect });
            }
        }
        Ok(Self { samples, c })
    }

    pub fn samples(&self) -> &[WorldlineSample] {
        &self.samples
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

pub fn worldline_to_kcurve(xi: &Worldline) -> Result<KCurve> {
    let samples = xi
        .samples
        .iter()
        .map(|s| Ok((s.tau, KPoint::in_k(s.four_velocity.clone())?)))
        .collect::<Result<Vec<_>>>()?;
    KCurve::new(samples)
}

/// Integral over `[a, b]` of the Lagrange interpolant through the stencil,
/// evaluated with 2-point Gauss-Legendre (exact up to cubics).
fn stencil_integral(ts: &[f64], ys: &[&MinkVector], a: f64, b: f64) -> MinkVector {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let node = half / 3.0f64.sqrt();
    let mut acc = ys[0].scale(0.0);
    for x in [mid - node, mid + node] {
        for j in 0..ts.len() {
            let mut l = 1.0;
            for m in 0..ts.len() {
                if m != j {
                    l *= (x - ts[m]) / (ts[j] - ts[m]);
                }
            }
            acc = acc.add_scaled(l * half, ys[j]);
        }
    }
    acc
}

/// Lift `zeta0 = c p` of each sample and integrate positions with piecewise
/// cubic quadrature, `xi = 0` at the first sample.
pub fn kcurve_to_worldline(zeta: &KCurve, c: f64) -> Result<Worldline> {
    check_c(c)?;
    let n = zeta.len();
    let velocities: Vec<MinkVector> = zeta.points.iter().map(|p| p.scaled(c)).collect();
    let mut position = velocities[0].scale(0.0);
    let mut samples = Vec::with_capacity(n);
    samples.push(WorldlineSample {
        tau: zeta.taus[0],
        position: position.clone(),
        four_velocity: velocities[0].clone(),
    });
    let width = n.min(4);
    for i in 0..n - 1 {
        let start = i.saturating_sub(1).min(n - width);
        let ts = &zeta.taus[start..start + width];
        let ys: Vec<&MinkVector> = velocities[start..start + width].iter().collect();
        let step = stencil_integral(ts, &ys, zeta.taus[i], zeta.taus[i + 1]);
        position = &position + &step;
        samples.push(WorldlineSample {
            tau: zeta.taus[i + 1],
            position: position.clone(),
            four_velocity: velocities[i + 1].clone(),
        });
    }
    Ok(Worldline { samples, c })
}

/// Four-acceleration `pi[zeta] d zeta0 / d tau` at proper time `tau`, by
/// central differences of the interpolated lift with the local sample spacing
/// (one-sided near the ends).
pub fn acceleration(zeta: &KCurve, tau: f64, c: f64) -> Result<MinkVector> {
    check_c(c)?;
    let n = zeta.len();
    let (lo, hi) = (zeta.taus[0], zeta.taus[n - 1]);
    if n < 2 || !(tau >= lo && tau <= hi) {
        return Err(zeta.range_error(tau));
    }
    let i = zeta.taus.partition_point(|&t| t <= tau).clamp(1, n - 1) - 1;
    let h = zeta.taus[i + 1] - zeta.taus[i];
    let lift = |t: f64| -> Result<MinkVector> { Ok(zeta.point_at(t.clamp(lo, hi))?.scaled(c)) };
    let derivative = if tau - h >= lo && tau + h <= hi {
        (&lift(tau + h)? - &lift(tau - h)?).scale(0.5 / h)
    } else if tau + 2.0 * h <= hi {
        lift(tau)?
            .scale(-3.0)
            .add_scaled(4.0, &lift(tau + h)?)
            .add_scaled(-1.0, &lift(tau + 2.0 * h)?)
            .scale(0.5 / h)
    } else if tau - 2.0 * h >= lo {
        lift(tau)?
            .scale(3.0)
            .add_scaled(-4.0, &lift(tau - h)?)
            .add_scaled(1.0, &lift(tau - 2.0 * h)?)
            .scale(0.5 / h)
    } else {
        (&lift(zeta.taus[i + 1])? - &lift(zeta.taus[i])?).scale(1.0 / h)
    };
    let p = zeta.point_at(tau)?;
    Ok(derivative.add_scaled(derivative.form(p.rep()), p.rep()))
}

/// A time-dependent acceleration field `A(p, tau)` on kinematic space. The
/// force is `m A`.
pub trait ForceField: Sync {
    /// The acceleration at `point`: a tangent vector whose length in the
    /// scaled space is the proper acceleration.
    fn field(&self, point: &KPoint, tau: f64) -> Result<TangentVec>;

    fn mass(&self) -> f64 {
        1.0
    }

    fn force(&self, point: &KPoint, tau: f64) -> Result<TangentVec> {
        Ok(self.field(point, tau)?.scaled_by(self.mass()))
    }
}

/// A field given by a closure.
pub struct FnField<F>(pub F);

impl<F> ForceField for FnField<F>
where
    F: Fn(&KPoint, f64) -> Result<TangentVec> + Sync,
{
    fn field(&self, point: &KPoint, tau: f64) -> Result<TangentVec> {
        (self.0)(point, tau)
    }
}

/// No force: inertial motion.
#[derive(Debug, Clone, Copy, Default)]
pub struct ZeroField;

impl ForceField for ZeroField {
    fn field(&self, point: &KPoint, _tau: f64) -> Result<TangentVec> {
        TangentVec::zero(point.clone(), Scale::Unit)
    }
}

/// Constant magnitude along a fixed direction, parallel transported from a
/// base observer. Starting at the base this produces hyperbolic motion.
#[derive(Debug, Clone)]
pub struct ConstantField {
    direction: TangentVec,
    magnitude: f64,
    c: f64,
    mass: f64,
}

impl ConstantField {
    pub fn new(base: KPoint, direction: MinkVector, magnitude: f64, c: f64) -> Result<Self> {
        check_c(c)?;
        let w = TangentVec::new(base, direction, Scale::Unit)?;
        let len = w.norm();
        if len == 0.0 {
            return Err(Error::ZeroVector);
        }
        if !magnitude.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            direction: w.scaled_by(1.0 / len),
            magnitude,
            c,
            mass: 1.0,
        })
    }

    pub fn with_mass(mut self, mass: f64) -> Self {
        self.mass = mass;
        self
    }
}

impl ForceField for ConstantField {
    fn field(&self, point: &KPoint, _tau: f64) -> Result<TangentVec> {
        let t = parallel_transport(&self.direction, point)?;
        Ok(TangentVec::new_unchecked(
            t.base().clone(),
            t.vec().scale(self.magnitude),
            Scale::Scaled(self.c),
        ))
    }

    fn mass(&self) -> f64 {
        self.mass
    }
}

/// Constant magnitude along the metric circles about a center (plane case):
/// the integral curves are circles, i.e. uniform circular motion.
#[derive(Debug, Clone)]
pub struct CircularField {
    center: KPoint,
    magnitude: f64,
    c: f64,
    mass: f64,
}

impl CircularField {
    pub fn new(center: KPoint, magnitude: f64, c: f64) -> Result<Self> {
        check_c(c)?;
        require_plane(center.n())?;
        center.ensure(Region::K)?;
        if !magnitude.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            center,
            magnitude,
            c,
            mass: 1.0,
        })
    }

    pub fn with_mass(mut self, mass: f64) -> Self {
        self.mass = mass;
        self
    }
}

impl ForceField for CircularField {
    fn field(&self, point: &KPoint, tau: f64) -> Result<TangentVec> {
        let radial = log_map(point, &self.center, Scale::Unit)?;
        let len = radial.norm();
        if len == 0.0 {
            return Err(Error::FieldEvaluation {
                tau,
                message: "circular field is undefined at its center".into(),
            });
        }
        // quarter turn of the inward radial direction
        let tangent = lorentz_cross(point.rep(), radial.vec()).scale(-self.magnitude / len);
        TangentVec::new(point.clone(), tangent, Scale::Scaled(self.c))
    }

    fn mass(&self) -> f64 {
        self.mass
    }
}

fn derivative(field: &dyn ForceField, y: &MinkVector, tau: f64, c: f64) -> Result<MinkVector> {
    let point = KPoint::in_k(y.clone()).map_err(|_| Error::BlowUp { tau })?;
    let a = field.field(&point, tau).map_err(|e| match e {
        Error::FieldEvaluation { .. } => e,
        other => Error::FieldEvaluation {
            tau,
            message: other.to_string(),
        },
    })?;
    let v = a.vec().scale(c / a.scale().c());
    if !v.is_finite() {
        return Err(Error::FieldEvaluation {
            tau,
            message: "non-finite field value".into(),
        });
    }
    Ok(v)
}

/// Integral curve of `zeta' = A(zeta, tau)` from `zeta(tau0) = p0`, by
/// classical Runge-Kutta on the lift with renormalization to the hyperboloid
/// after every step, together with its worldline.
pub fn integrate_force(
    field: &dyn ForceField,
    p0: &KPoint,
    tau0: f64,
    tau1: f64,
    step: f64,
    c: f64,
) -> Result<(KCurve, Worldline)> {
    check_c(c)?;
    p0.ensure(Region::K)?;
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "step must be positive, got {step}"
        )));
    }
    if !(tau0.is_finite() && tau1.is_finite() && tau1 > tau0) {
        return Err(Error::InvalidArgument(format!(
            "integration interval [{tau0}, {tau1}] is empty"
        )));
    }
    let span = tau1 - tau0;
    let steps = ((span / step) - 1e-9).ceil().max(1.0) as usize;
    let h = span / steps as f64;

    let mut y = p0.scaled(c);
    let mut current = p0.clone();
    let mut samples = Vec::with_capacity(steps + 1);
    samples.push((tau0, current.clone()));
    for i in 0..steps {
        let tau = tau0 + i as f64 * h;
        let k1 = derivative(field, &y, tau, c)?;
        let k2 = derivative(field, &y.add_scaled(0.5 * h, &k1), tau + 0.5 * h, c)?;
        let k3 = derivative(field, &y.add_scaled(0.5 * h, &k2), tau + 0.5 * h, c)?;
        let k4 = derivative(field, &y.add_scaled(h, &k3), tau + h, c)?;
        let incr = k1
            .add_scaled(2.0, &k2)
            .add_scaled(2.0, &k3)
            .add_scaled(1.0, &k4);
        let next = y.add_scaled(h / 6.0, &incr);
        let tau_next = tau0 + (i + 1) as f64 * h;
        let norm = -next.norm_sq();
        if !(next.is_finite() && norm > 0.0 && next.time() > 0.0) {
            return Err(Error::BlowUp { tau: tau_next });
        }
        y = next.scale(c / norm.sqrt());
        let point = KPoint::from_unit(y.scale(1.0 / c));
        if unit_distance(&current, &point) > BLOW_UP_RAPIDITY {
            return Err(Error::BlowUp { tau: tau_next });
        }
        samples.push((tau_next, point.clone()));
        current = point;
    }
    let curve = KCurve::new(samples)?;
    let worldline = kcurve_to_worldline(&curve, c)?;
    Ok((curve, worldline))
}

/// Closed-form hyperbolic motion along `e1` from the origin observer:
/// `xi(tau) = (c^2/a) (sinh(a tau/c), cosh(a tau/c) - 1, 0, ...)`.
pub fn hyperbolic_motion(n: usize, a: f64, c: f64, tau: f64) -> Result<(MinkVector, MinkVector)> {
    check_c(c)?;
    let r = a * tau / c;
    let mut pos = vec![0.0; n + 1];
    let mut vel = vec![0.0; n + 1];
    if a == 0.0 {
        pos[0] = c * tau;
    } else {
        pos[0] = c * c / a * r.sinh();
        // cosh r - 1 = 2 sinh^2(r/2)
        pos[1] = c * c / a * 2.0 * (0.5 * r).sinh().powi(2);
    }
    vel[0] = c * r.cosh();
    vel[1] = c * r.sinh();
    Ok((MinkVector::new(pos)?, MinkVector::new(vel)?))
}

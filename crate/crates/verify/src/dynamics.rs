use kinspace::{
    acceleration, integrate_force, kcurve_to_worldline, worldline_to_kcurve, CircularField,
    ConstantField, FnField, ForceField, KPoint, MinkVector, TangentVec, Worldline, WorldlineSample,
};
use rand::Rng;

use crate::oracle::{self, dot, Matrix, Vector};
use crate::sample;
use crate::{mink, point, raw, sweep, Check};

const EQUIVARIANCE_TRIALS: usize = 16;

fn hyperbolic_field(n: usize, a: f64, c: f64) -> (KPoint, ConstantField) {
    let o = KPoint::origin(n).unwrap();
    let e1 = MinkVector::basis(n, 1).unwrap();
    let field = ConstantField::new(o.clone(), e1, a, c).unwrap();
    (o, field)
}

/// Largest position error of the integrated hyperbolic motion on `[0, t1]`.
fn hyperbolic_error(step: f64, t1: f64) -> f64 {
    let (o, field) = hyperbolic_field(2, 1.0, 1.0);
    let (_, xi) = integrate_force(&field, &o, 0.0, t1, step, 1.0).unwrap();
    xi.samples()
        .iter()
        .map(|s| (raw(&s.position) - oracle::hyperbolic_position(2, 1.0, 1.0, s.tau)).amax())
        .fold(0.0, f64::max)
}

fn drift(xi: &Worldline) -> f64 {
    let c2 = xi.c() * xi.c();
    xi.samples()
        .iter()
        .map(|s| {
            let u = raw(&s.four_velocity);
            (dot(&u, &u) + c2).abs() / c2
        })
        .fold(0.0, f64::max)
}

/// Conjugate of `field` by the Lorentz matrix `m`.
fn conjugated<'a>(field: &'a (dyn ForceField + 'a), m: &'a Matrix) -> impl ForceField + 'a {
    let inv = oracle::lorentz_inverse(m);
    FnField(move |x: &KPoint, tau: f64| {
        let back = point(&(&inv * raw(x.rep())));
        let a = field.field(&back, tau)?;
        TangentVec::new(x.clone(), mink(&(m * raw(a.vec()))), a.scale())
    })
}

pub fn dynamics(seed: u64) -> Vec<Check> {
    let mut checks = Vec::new();

    let worst = hyperbolic_error(1e-3, 5.0);
    checks.push(Check::new(
        "hyperbolic motion, step 1e-3 on [0,5]",
        5001,
        worst,
        1e-8,
    ));

    let errors: Vec<f64> = [0.1, 0.05, 0.025]
        .iter()
        .map(|&h| hyperbolic_error(h, 5.0))
        .collect();
    let order = errors
        .windows(2)
        .map(|w| (w[0] / w[1]).log2())
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::at_least(
        "observed order under step halving",
        3,
        order,
        3.7,
    ));

    // 10^4 steps each, with bounded rapidity
    let (o, field) = hyperbolic_field(3, 1.0, 1.0);
    let (_, xi) = integrate_force(&field, &o, 0.0, 1.0, 1e-4, 1.0).unwrap();
    let mut worst_drift = drift(&xi);
    let center = KPoint::origin(2).unwrap();
    let start = point(&Vector::from_column_slice(&[
        1.0f64.cosh(),
        1.0f64.sinh(),
        0.0,
    ]));
    let circular = CircularField::new(center.clone(), 0.5, 2.0).unwrap();
    let (curve, xi) = integrate_force(&circular, &start, 0.0, 10.0, 1e-3, 2.0).unwrap();
    worst_drift = worst_drift.max(drift(&xi));
    checks.push(Check::new(
        "normalization drift after 1e4 steps",
        20_002,
        worst_drift,
        1e-12,
    ));

    // circular motion: constant proper acceleration orthogonal to the velocity
    let taus = curve.taus();
    let (mut ortho, mut magnitude) = (0.0f64, 0.0f64);
    for &tau in taus.iter().step_by(10) {
        let acc = raw(&acceleration(&curve, tau, 2.0).unwrap());
        let vel = raw(&curve.point_at(tau).unwrap().scaled(2.0));
        ortho = ortho.max(dot(&acc, &vel).abs());
        magnitude = magnitude.max((dot(&acc, &acc).sqrt() - 0.5).abs() / 0.5);
    }
    checks.push(Check::new(
        "<xi'', xi'> = 0 along circular motion",
        taus.len() / 10,
        ortho,
        1e-8,
    ));
    checks.push(Check::new(
        "constant |xi''| along circular motion",
        taus.len() / 10,
        magnitude,
        1e-6,
    ));

    // worldline -> curve -> worldline on the closed form
    let samples: Vec<WorldlineSample> = (0..=5000)
        .map(|i| {
            let tau = i as f64 * 1e-3;
            let (position, four_velocity) = kinspace::hyperbolic_motion(2, 1.0, 1.0, tau).unwrap();
            WorldlineSample {
                tau,
                position,
                four_velocity,
            }
        })
        .collect();
    let xi = Worldline::new(samples, 1.0).unwrap();
    let zeta = worldline_to_kcurve(&xi).unwrap();
    let back = kcurve_to_worldline(&zeta, 1.0).unwrap();
    let trip = xi
        .samples()
        .iter()
        .zip(back.samples())
        .map(|(a, b)| {
            let dx = (raw(&a.position) - raw(&b.position)).amax();
            let du = (raw(&a.four_velocity) - raw(&b.four_velocity)).amax()
                / raw(&a.four_velocity).amax();
            dx.max(du)
        })
        .fold(0.0, f64::max);
    checks.push(Check::new(
        "worldline -> curve -> worldline",
        5001,
        trip,
        1e-8,
    ));
    let again = worldline_to_kcurve(&back).unwrap();
    let same = zeta
        .points()
        .iter()
        .zip(again.points())
        .filter(|(a, b)| !a.same_point(b))
        .count();
    checks.push(Check::all("curve -> worldline -> curve", 5001, same > 0));

    let [equivariance] = sweep(seed, 8, EQUIVARIANCE_TRIALS, |rng| {
        let m = sample::lorentz(rng, 2, 1.0);
        let c = rng.random_range(0.5..3.0);
        let center = point(&sample::observer(rng, 2, 1.0));
        let start = point(&sample::observer(rng, 2, 1.0));
        let field = CircularField::new(center, rng.random_range(0.1..2.0), c).unwrap();
        let moved = conjugated(&field, &m);
        let (_, xi) = integrate_force(&field, &start, 0.0, 2.0, 1e-2, c).unwrap();
        let image_start = point(&(&m * raw(start.rep())));
        let (_, eta) = integrate_force(&moved, &image_start, 0.0, 2.0, 1e-2, c).unwrap();
        let gap = xi
            .samples()
            .iter()
            .zip(eta.samples())
            .map(|(a, b)| (&m * raw(&a.position) - raw(&b.position)).amax())
            .fold(0.0, f64::max);
        [gap]
    });
    checks.push(Check::new(
        "Lorentz equivariance of integration",
        EQUIVARIANCE_TRIALS,
        equivariance,
        1e-8,
    ));
    checks
}

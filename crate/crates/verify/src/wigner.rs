use std::f64::consts::PI;

use kinspace::{
    boost_between, log_map, midpoint, oriented_area, reflection_in_hyperplane, wigner_rotation,
    IsometryClass, KPoint, LorentzMap, Scale,
};
use nalgebra::DMatrix;
use rand::Rng;

use crate::oracle::{self, unit_timelike, Matrix, Vector};
use crate::sample;
use crate::{point, raw, sweep, Check};

const TRIANGLES: usize = 1_000;
const MAX_SIDE: f64 = 5.0;

fn step(p: &Vector, dir: &Vector, t: f64) -> Vector {
    p * t.cosh() + dir * t.sinh()
}

/// A random triangle in the plane with every side at most `MAX_SIDE`,
/// moved so that its centroid sits at the origin. Boost matrices of
/// vertices far out grow like `e^(2r)` and their products lose every digit
/// to cancellation, so the comparison is made in centered coordinates.
fn triangle(rng: &mut impl Rng) -> [Vector; 3] {
    let p1 = sample::observer(rng, 2, 2.0);
    let p2 = step(
        &p1,
        &sample::tangent(rng, &p1, 1.0),
        rng.random_range(0.0..MAX_SIDE),
    );
    let p3 = loop {
        let p3 = step(
            &p1,
            &sample::tangent(rng, &p1, 1.0),
            rng.random_range(0.0..MAX_SIDE),
        );
        if oracle::distance(&p2, &p3) <= MAX_SIDE {
            break p3;
        }
    };
    let centroid = unit_timelike(&(&p1 + &p2 + &p3));
    let m = oracle::boost(&centroid, &Vector::from_column_slice(&[1.0, 0.0, 0.0]));
    [&m * p1, &m * p2, &m * p3].map(|p| unit_timelike(&p))
}

/// Interior angle at `a` by the half-angle form of the hyperbolic law of
/// cosines, which stays accurate for thin triangles.
fn half_angle(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    let (ab, ac, bc) = (
        oracle::distance(a, b),
        oracle::distance(a, c),
        oracle::distance(b, c),
    );
    let s = 0.5 * (ab + ac + bc);
    let num = (s - ab).max(0.0).sinh() * (s - ac).max(0.0).sinh();
    let den = s.sinh() * (s - bc).max(0.0).sinh();
    if den == 0.0 {
        return if num == 0.0 { 0.0 } else { PI };
    }
    2.0 * (num / den).sqrt().atan()
}

fn area(p: &[Vector; 3]) -> f64 {
    let defect = PI
        - half_angle(&p[0], &p[1], &p[2])
        - half_angle(&p[1], &p[2], &p[0])
        - half_angle(&p[2], &p[0], &p[1]);
    defect * oracle::det3(&p[0], &p[1], &p[2]).signum()
}

fn wrap(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Reflection in the geodesic orthogonal to `G<x, toward>` through `x`.
fn perpendicular_reflection(x: &KPoint, toward: &KPoint) -> LorentzMap {
    let w = log_map(x, toward, Scale::Unit).unwrap();
    reflection_in_hyperplane(&KPoint::in_g(w.vec().clone()).unwrap()).unwrap()
}

/// `R5 h2 h1 R6` built from library reflections and boosts.
fn six_reflections(p1: &KPoint, p2: &KPoint, p3: &KPoint) -> DMatrix<f64> {
    let q1 = midpoint(p1, p2).unwrap();
    let q2 = midpoint(p2, p3).unwrap();
    let h1 = boost_between(p1, p2).unwrap();
    let h2 = boost_between(p2, p3).unwrap();
    let r5 = perpendicular_reflection(&q2, &q1);
    let r6 = perpendicular_reflection(&q1, &q2);
    r5.compose(&h2.compose(&h1.compose(&r6).unwrap()).unwrap())
        .unwrap()
        .matrix()
        .clone()
}

pub fn rotation(seed: u64) -> Vec<Check> {
    let [defect, areas, angles, maps, fixed, not_elliptic, identity, collinear] =
        sweep(seed, 5, TRIANGLES, |rng| {
            let t = triangle(rng);
            let [k1, k2, k3] = [point(&t[0]), point(&t[1]), point(&t[2])];
            let w = wigner_rotation(&k1, &k2, &k3).unwrap();
            let lib_area = oriented_area(&k1, &k2, &k3).unwrap().value();
            let reference = area(&t);

            let factors = [
                oracle::boost(&t[1], &t[2]),
                oracle::boost(&t[0], &t[1]),
                oracle::lorentz_inverse(&oracle::boost(&t[0], &t[2])),
            ];
            let m: Matrix = &factors[0] * &factors[1] * &factors[2];
            // rounding in a product is bounded by the factor sizes, not the result
            let scale: f64 = factors.iter().map(|f| f.amax()).product();
            let fixed = (raw(w.map.apply_point(&k3).unwrap().rep()) - unit_timelike(&t[2])).amax();
            let elliptic = matches!(
                w.map.class(),
                IsometryClass::Elliptic | IsometryClass::Identity
            );

            let six = if k1.same_point(&k2) || k2.same_point(&k3) {
                0.0
            } else {
                (six_reflections(&k1, &k2, &k3) - DMatrix::identity(3, 3)).amax()
            };

            // p3 on the geodesic through p1 and p2
            let dir = oracle::direction(&t[0], &t[1]);
            let on_line = step(
                &unit_timelike(&t[0]),
                &dir,
                rng.random_range(-MAX_SIDE..MAX_SIDE),
            );
            let flat = wigner_rotation(&k1, &k2, &point(&on_line)).unwrap().angle;
            [
                wrap(w.angle + lib_area),
                lib_area - reference,
                wrap(w.angle - oracle::rotation_angle(&m, &t[2])),
                (w.map.matrix() - &m).amax() / scale,
                fixed,
                (!elliptic) as u8 as f64,
                six,
                flat,
            ]
        });
    vec![
        Check::new("angle = -oriented area", TRIANGLES, defect, 1e-9),
        Check::new(
            "oriented area vs half-angle law of cosines",
            TRIANGLES,
            areas,
            1e-9,
        ),
        Check::new(
            "angle vs rotation of the reflection-built composite",
            TRIANGLES,
            angles,
            1e-9,
        ),
        Check::new(
            "h2 h1 H^-1 vs reflection-built composite, relative to factor sizes",
            TRIANGLES,
            maps,
            1e-11,
        ),
        Check::new("h2 h1 H^-1 fixes p3", TRIANGLES, fixed, 1e-9),
        Check::all("h2 h1 H^-1 is elliptic", TRIANGLES, not_elliptic > 0.0),
        Check::new("R5 h2 h1 R6 = 1", TRIANGLES, identity, 1e-9),
        Check::new("collinear triples give zero", TRIANGLES, collinear, 1e-9),
    ]
}

use kinspace::{
    velocity_add, velocity_add_via_components, velocity_add_via_parallelogram, Velocity,
};
use rand::Rng;

use crate::oracle::{self, dot, unit_spacelike, Vector};
use crate::sample;
use crate::{mink, point, raw, sweep, Check};

const PAIRS: usize = 10_000;

fn velocity(base: &Vector, vec: &Vector, c: f64) -> Velocity {
    Velocity::new(point(base), mink(vec), c).unwrap()
}

/// Two orthonormal tangent directions at the unit timelike `p`.
fn orthonormal_pair(rng: &mut impl Rng, p: &Vector) -> (Vector, Vector) {
    let e1 = sample::tangent(rng, p, 1.0);
    let t = sample::tangent(rng, p, 1.0);
    let e2 = unit_spacelike(&(&t - &e1 * dot(&t, &e1)));
    (e1, e2)
}

/// Spatial coordinates of a tangent vector at `p` in the oracle frame at `p`.
fn spatial(p: &Vector, v: &Vector) -> Vector {
    let coords = oracle::frame_coords(p, v);
    coords.rows(1, coords.len() - 1).into_owned()
}

pub fn addition(seed: u64) -> Vec<Check> {
    let [collinear, perpendicular, einstein, para, comp, above_c] = sweep(seed, 4, PAIRS, |rng| {
        let n = if rng.random_bool(0.5) {
            2
        } else {
            sample::dimension(rng)
        };
        let c = rng.random_range(0.5..5.0);
        let p = sample::observer(rng, n, 2.0);
        let (e1, e2) = orthonormal_pair(rng, &p);
        let a = c * rng.random_range(-0.99..0.99);
        let b = c * rng.random_range(-0.99..0.99);

        let along =
            velocity_add(&velocity(&p, &(&e1 * a), c), &velocity(&p, &(&e1 * b), c)).unwrap();
        let expected = oracle::einstein_collinear(a, b, c);
        let collinear = (along.vec().form(&mink(&e1)) - expected).abs() / c;

        let (a, b) = (a.abs(), b.abs());
        let perp =
            velocity_add(&velocity(&p, &(&e1 * a), c), &velocity(&p, &(&e2 * b), c)).unwrap();
        let expected = (a * a + b * b * (1.0 - a * a / (c * c))).sqrt();
        let perpendicular = (perp.speed() - expected).abs() / c;

        // generic pair, the three constructions and the Einstein formula
        let (s1, s2) = (rng.random_range(0.0..0.99), rng.random_range(0.0..0.99));
        let v1 = sample::tangent(rng, &p, c * s1);
        let v2 = sample::tangent(rng, &p, c * s2);
        let (u1, u2) = (velocity(&p, &v1, c), velocity(&p, &v2, c));
        let s = raw(velocity_add(&u1, &u2).unwrap().vec());
        let sp = raw(velocity_add_via_parallelogram(&u1, &u2).unwrap().vec());
        let sc = raw(velocity_add_via_components(&u1, &u2).unwrap().vec());
        let e = oracle::einstein_add(&spatial(&p, &v1), &spatial(&p, &v2), c);
        let einstein = (spatial(&p, &s) - e).norm() / c;
        let speed = dot(&s, &s).sqrt();
        [
            collinear,
            perpendicular,
            einstein,
            (&s - &sp).amax() / c,
            (&s - &sc).amax().max((&sp - &sc).amax()) / c,
            (speed >= c || perp.speed() >= c || along.speed() >= c) as u8 as f64,
        ]
    });
    vec![
        Check::new("collinear Einstein formula", PAIRS, collinear, 1e-12),
        Check::new("perpendicular speed", PAIRS, perpendicular, 1e-10),
        Check::new(
            "transport sum vs Einstein addition in the frame",
            PAIRS,
            einstein,
            1e-10,
        ),
        Check::new("transport vs hypercycle parallelogram", PAIRS, para, 1e-9),
        Check::new(
            "component sum vs the other constructions",
            PAIRS,
            comp,
            1e-9,
        ),
        Check::all("|v1 + v2| < c", PAIRS, above_c > 0.0),
    ]
}

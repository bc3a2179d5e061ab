use kinspace::{
    boost_between, distance, elliptic_about, exp_map, log_map, parabolic_fixing,
    parallel_transport, reflection_in_hyperplane, reflection_in_point, wigner_rotation, KPoint,
    Scale, TangentVec,
};
use rand::Rng;

use crate::oracle::{self, dot, Vector};
use crate::sample;
use crate::{mink, point, raw, sweep, Check};

const TRIALS: usize = 10_000;
const ODE_TRIALS: usize = 500;
const ODE_STEPS: usize = 2_000;

/// Sample points stay within this rapidity of the origin. A float
/// representative at rapidity `r` only pins the point down to about
/// `eps e^(2r)`, so round trips through far points cannot meet the
/// tolerances for reasons unrelated to the maps under test.
const SPREAD: f64 = 2.0;
const MAX_LEN: f64 = 5.0;

fn tangent_vec(p: &Vector, w: &Vector) -> TangentVec {
    TangentVec::new(point(p), mink(w), Scale::Unit).unwrap()
}

fn gap(a: &Vector, b: &Vector) -> f64 {
    (a - b).amax() / b.amax().max(1.0)
}

pub fn core(seed: u64) -> Vec<Check> {
    let [log_exp, exp_log, additive, norm, boost, own_tangent] = sweep(seed, 9, TRIALS, |rng| {
        let n = sample::dimension(rng);
        let p = sample::observer(rng, n, SPREAD);
        let len = rng.random_range(0.0..MAX_LEN);
        let w = sample::tangent(rng, &p, len);
        let kp = point(&p);
        let q = exp_map(&tangent_vec(&p, &w));
        let back = raw(log_map(&kp, &q, Scale::Unit).unwrap().vec());
        let log_exp = (&back - &w).amax() / len.max(1.0);
        let additive = (distance(&kp, &q).unwrap() - len).abs() / len.max(1.0);

        let r = sample::observer(rng, n, SPREAD);
        let kr = point(&r);
        let there = exp_map(&log_map(&kp, &kr, Scale::Unit).unwrap());
        let exp_log = gap(&raw(there.rep()), &r);

        let vlen = rng.random_range(0.1..5.0);
        let v = sample::tangent(rng, &p, vlen);
        let moved = raw(parallel_transport(&tangent_vec(&p, &v), &kr).unwrap().vec());
        let norm = (dot(&moved, &moved) - dot(&v, &v)).abs() / dot(&v, &v);
        let boost = gap(&moved, &(oracle::boost(&p, &r) * &v));

        let along = oracle::direction(&p, &r);
        let carried = raw(parallel_transport(&tangent_vec(&p, &along), &kr)
            .unwrap()
            .vec());
        let own_tangent = gap(&carried, &(-oracle::direction(&r, &p)));
        [log_exp, exp_log, additive, norm, boost, own_tangent]
    });

    let [geodesic_ode, transport_ode] = sweep(seed, 90, ODE_TRIALS, |rng| {
        let n = rng.random_range(2..=4);
        let p = sample::observer(rng, n, 1.0);
        let wlen = rng.random_range(0.0..3.0);
        let w = sample::tangent(rng, &p, wlen);
        let q = raw(exp_map(&tangent_vec(&p, &w)).rep());
        let geo = gap(&q, &oracle::geodesic_ode(&p, &w, ODE_STEPS));
        let r = sample::observer(rng, n, 1.5);
        let v = sample::tangent(rng, &p, 1.0);
        let moved = raw(parallel_transport(&tangent_vec(&p, &v), &point(&r))
            .unwrap()
            .vec());
        [
            geo,
            gap(&moved, &oracle::transport_ode(&p, &r, &v, ODE_STEPS)),
        ]
    });

    let [lorentz, self_reported] = sweep(seed, 91, TRIALS, |rng| {
        let n = sample::dimension(rng);
        let p = point(&sample::observer(rng, n, SPREAD));
        let q = point(&sample::observer(rng, n, SPREAD));
        let u = point(&sample::spacelike(rng, n, 2.0));
        let mut maps = vec![
            boost_between(&p, &q).unwrap(),
            reflection_in_point(&p).unwrap(),
            reflection_in_hyperplane(&u).unwrap(),
        ];
        let composite = maps[0]
            .compose(&maps[1])
            .unwrap()
            .compose(&maps[2])
            .unwrap();
        maps.push(composite);
        if n == 2 || rng.random_bool(0.3) {
            let (a, b, c) = (
                point(&sample::observer(rng, 2, SPREAD)),
                point(&sample::observer(rng, 2, SPREAD)),
                point(&sample::observer(rng, 2, SPREAD)),
            );
            let f = point(&sample::lightlike(rng, 2));
            maps.push(elliptic_about(&a, rng.random_range(-4.0..4.0)).unwrap());
            maps.push(parabolic_fixing(&f, rng.random_range(-5.0..5.0)).unwrap());
            maps.push(wigner_rotation(&a, &b, &c).unwrap().map);
        }
        let worst = maps
            .iter()
            .map(|m| oracle::lorentz_defect(m.matrix()))
            .fold(0.0, f64::max);
        let reported = maps
            .iter()
            .map(|m| (m.defect() - oracle::lorentz_defect(m.matrix())).abs())
            .fold(0.0, f64::max);
        [worst, reported]
    });

    // exp of the zero vector
    let unit = {
        let k = KPoint::new(mink(&Vector::from_column_slice(&[2.0, 1.0, 1.0]))).unwrap();
        let zero = exp_map(&TangentVec::zero(k.clone(), Scale::Unit).unwrap());
        gap(&raw(zero.rep()), &raw(k.rep()))
    };

    vec![
        Check::new("log(exp(w)) = w, |w| <= 5", TRIALS, log_exp, 1e-10),
        Check::new("exp(log(q)) = q", TRIALS, exp_log, 1e-10),
        Check::new("d(p, exp w) = |w|", TRIALS, additive, 1e-10),
        Check::new("exp vs geodesic ODE", ODE_TRIALS, geodesic_ode, 1e-10),
        Check::new("exp of zero is the base", 1, unit, 0.0),
        Check::new("transport preserves the metric", TRIALS, norm, 1e-12),
        Check::new("transport vs boost differential", TRIALS, boost, 1e-10),
        Check::new(
            "transport vs parallel-transport ODE",
            ODE_TRIALS,
            transport_ode,
            1e-10,
        ),
        Check::new(
            "transport of the geodesic tangent",
            TRIALS,
            own_tangent,
            1e-10,
        ),
        Check::new(
            "M^T eta M = eta for constructed maps",
            TRIALS,
            lorentz,
            1e-10,
        ),
        Check::new(
            "reported defect vs independent defect",
            TRIALS,
            self_reported,
            1e-10,
        ),
    ]
}

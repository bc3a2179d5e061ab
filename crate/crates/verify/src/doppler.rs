use kinspace::{busemann, energy_ratio, frequency_ratio, parabolic_fixing, KPoint, Photon};
use rand::Rng;

use crate::oracle::{self, dot, unit_timelike, Vector};
use crate::sample;
use crate::{mink, point, raw, rel, sweep, Check};

const TRIALS: usize = 10_000;
const RAY_LENGTH: f64 = 20.0;

fn photon(f: &Vector) -> Photon {
    Photon::new(mink(f)).unwrap()
}

pub fn doppler(seed: u64) -> Vec<Check> {
    let reference = {
        let p = KPoint::origin(2).unwrap();
        let q = point(&Vector::from_column_slice(&[1.25, 0.75, 0.0]));
        let f = photon(&Vector::from_column_slice(&[1.0, 1.0, 0.0]));
        (frequency_ratio(&f, &p, &q).unwrap() - 2.0).abs()
    };

    let [receding, energy, limit, level, level_raw] = sweep(seed, 6, TRIALS, |rng| {
        let n = sample::dimension(rng);
        let p = sample::observer(rng, n, 2.0);
        let q = sample::observer(rng, n, 2.0);
        let e = sample::tangent(rng, &p, 1.0);

        // q recedes from the source of the photon travelling along e
        let beta: f64 = rng.random_range(0.0..0.99);
        let moving = &p + &e * beta;
        let f_along = &p + &e;
        let ratio = frequency_ratio(&photon(&f_along), &point(&p), &point(&moving)).unwrap();
        let receding = rel(ratio, ((1.0 + beta) / (1.0 - beta)).sqrt());

        let f = sample::lightlike(rng, n) * sample::rescale(rng).abs();
        let (kp, kq) = (point(&p), point(&q));
        let closed = busemann(&photon(&f), &kp, &kq).unwrap().exp();
        let raw_ratio = energy_ratio(
            &mink(&f),
            &mink(&(&p * sample::rescale(rng))),
            &mink(&(&q * sample::rescale(rng))),
        )
        .unwrap();

        // ray from o toward o + d, whose ideal end is the photon f_ray
        let o = sample::observer(rng, n, 1.0);
        let d = sample::tangent(rng, &o, 1.0);
        let f_ray = &o + &d;
        let b = busemann(&photon(&f_ray), &kp, &kq).unwrap();
        let from_limit = oracle::busemann_limit(&o, &d, &p, &q, RAY_LENGTH);

        // parabolic orbit of an observer about a photon, in the plane
        let f = sample::lightlike(rng, 2) * sample::rescale(rng).abs();
        let p = sample::observer(rng, 2, 2.0);
        let kp = point(&p);
        let s = rng.random_range(-5.0..5.0);
        let image = parabolic_fixing(photon(&f).ideal(), s)
            .unwrap()
            .apply_point(&kp)
            .unwrap();
        let level = (frequency_ratio(&photon(&f), &kp, &image).unwrap() - 1.0).abs();
        let x = unit_timelike(&raw(image.rep()));
        let level_raw = rel(dot(&f, &x), dot(&f, &p));
        [
            receding,
            rel(closed, raw_ratio),
            b - from_limit,
            level,
            level_raw,
        ]
    });
    vec![
        Check::new("beta = 0.6 gives ratio 2", 1, reference, 1e-12),
        Check::new("receding ratio sqrt((1+b)/(1-b))", TRIALS, receding, 1e-12),
        Check::new("closed form vs energy projection", TRIALS, energy, 1e-12),
        Check::new(
            "Busemann vs ray limit at T = 20",
            TRIALS,
            limit,
            2.0 * (-RAY_LENGTH).exp(),
        ),
        Check::new("parabolic orbits keep the frequency", TRIALS, level, 1e-10),
        Check::new("parabolic orbits keep <f, x>", TRIALS, level_raw, 1e-10),
    ]
}

//! Cross-module identities through the public API, in dimensions above the
//! plane where most unit tests live.

use kinspace::{
    boost_between, busemann, distance, exp_map, hyperbolic_motion, integrate_force, log_map,
    lorentz_factor, parallel_transport, scalar_velocity, tance, velocity_add, ConstantField,
    KPoint, MinkVector, Photon, Scale, TangentVec, Velocity,
};
use proptest::prelude::*;

fn observer(n: usize) -> impl Strategy<Value = KPoint> {
    prop::collection::vec(-2.0..2.0f64, n).prop_map(|x| {
        let t = (1.0 + x.iter().map(|v| v * v).sum::<f64>()).sqrt();
        let coords: Vec<f64> = std::iter::once(t).chain(x).collect();
        KPoint::from_coords(&coords).unwrap()
    })
}

fn photon(n: usize) -> impl Strategy<Value = Photon> {
    prop::collection::vec(-1.0..1.0f64, n)
        .prop_filter("nonzero direction", |x| x.iter().any(|v| v.abs() > 1e-3))
        .prop_map(|x| {
            let r = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let coords: Vec<f64> = std::iter::once(1.0)
                .chain(x.iter().map(|v| v / r))
                .collect();
            Photon::new(MinkVector::from_slice(&coords).unwrap()).unwrap()
        })
}

/// A tangent vector at `p`: any spatial vector projected onto `p`'s orthogonal.
fn tangent_at(p: &KPoint, x: &[f64]) -> MinkVector {
    let v = MinkVector::from_slice(&[&[0.0], x].concat()).unwrap();
    let a = p.rep();
    let k = v.form(a) / a.form(a);
    let coords: Vec<f64> = v
        .coords()
        .iter()
        .zip(a.coords())
        .map(|(vi, ai)| vi - k * ai)
        .collect();
    MinkVector::new(coords).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boosts_preserve_tance(p in observer(4), q in observer(4), a in observer(4), b in observer(4)) {
        let before = tance(&p, &q).unwrap().value();
        let m = boost_between(&a, &b).unwrap();
        let (p2, q2) = (m.apply_point(&p).unwrap(), m.apply_point(&q).unwrap());
        let after = tance(&p2, &q2).unwrap().value();
        prop_assert!((before - after).abs() <= 1e-9 * before.abs());
    }

    #[test]
    fn speed_is_tanh_of_distance(p in observer(3), q in observer(3), c in 0.5..3.0f64) {
        let d = distance(&p, &q).unwrap();
        let gamma = lorentz_factor(&p, &q).unwrap();
        prop_assert!((gamma - d.cosh()).abs() <= 1e-10 * gamma);
        let v = scalar_velocity(&p, &q, c).unwrap();
        prop_assert!((v - c * d.tanh()).abs() <= 1e-12 * c);
    }

    #[test]
    fn log_inverts_exp(p in observer(5), x in prop::collection::vec(-2.0..2.0f64, 5)) {
        let w = TangentVec::new(p.clone(), tangent_at(&p, &x), Scale::Unit).unwrap();
        let q = exp_map(&w);
        let back = log_map(&p, &q, Scale::Unit).unwrap();
        let err = w
            .vec()
            .coords()
            .iter()
            .zip(back.vec().coords())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        prop_assert!(err <= 1e-9 * (1.0 + w.norm()) * p.rep().coords()[0]);
    }

    #[test]
    fn transport_keeps_length(p in observer(3), q in observer(3), x in prop::collection::vec(-2.0..2.0f64, 3)) {
        let w = TangentVec::new(p.clone(), tangent_at(&p, &x), Scale::Unit).unwrap();
        let moved = parallel_transport(&w, &q).unwrap();
        prop_assert!((moved.norm() - w.norm()).abs() <= 1e-10 * (1.0 + w.norm()));
        prop_assert!(moved.vec().form(q.rep()).abs() <= 1e-9 * (1.0 + w.norm()) * q.rep().coords()[0]);
    }

    #[test]
    fn busemann_is_a_cocycle(f in photon(3), p in observer(3), q in observer(3), r in observer(3)) {
        let pq = busemann(&f, &p, &q).unwrap();
        let qr = busemann(&f, &q, &r).unwrap();
        let pr = busemann(&f, &p, &r).unwrap();
        prop_assert!((pq + qr - pr).abs() <= 1e-10 * (1.0 + pr.abs()));
    }

    #[test]
    fn collinear_addition_follows_einstein(u in -0.95..0.95f64, v in -0.95..0.95f64, c in 0.5..3.0f64) {
        let o = KPoint::origin(3).unwrap();
        let a = Velocity::from_components(o.clone(), &[u * c, 0.0, 0.0], c).unwrap();
        let b = Velocity::from_components(o, &[v * c, 0.0, 0.0], c).unwrap();
        let sum = velocity_add(&a, &b).unwrap().components();
        let want = (u + v) / (1.0 + u * v) * c;
        prop_assert!((sum[0] - want).abs() <= 1e-12 * c);
        prop_assert!(sum[1].abs() <= 1e-12 * c && sum[2].abs() <= 1e-12 * c);
    }
}

#[test]
fn constant_push_matches_hyperbolic_motion_in_three_dimensions() {
    let (n, c, a) = (3, 2.0, 1.5);
    let o = KPoint::origin(n).unwrap();
    let direction = MinkVector::from_slice(&[0.0, 1.0, 0.0, 0.0]).unwrap();
    let field = ConstantField::new(o.clone(), direction, a, c).unwrap();
    let (_, xi) = integrate_force(&field, &o, 0.0, 1.0, 1e-3, c).unwrap();
    let last = xi.samples().last().unwrap();
    let (pos, vel) = hyperbolic_motion(n, a, c, last.tau).unwrap();
    for (got, want) in last.position.coords().iter().zip(pos.coords()) {
        assert!((got - want).abs() < 1e-9, "position {got} vs {want}");
    }
    for (got, want) in last.four_velocity.coords().iter().zip(vel.coords()) {
        assert!((got - want).abs() < 1e-9, "four-velocity {got} vs {want}");
    }
}

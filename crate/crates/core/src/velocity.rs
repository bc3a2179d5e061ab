//! Relative velocities, rapidities and their addition laws.
//!
//! The velocity space of an observer `p` is the ball of radius `c` in
//! `p^perp`; the velocity `v` corresponds to the observer `P R (c p + v)`.

use crate::error::{Error, Region, Result};
use crate::geodesics::{
    exp_map, hypercycle_intersect, lorentz_cross, midpoint, parallel_transport, pole,
    signed_distance, unit_tangent_part, ExtGeodesic, Hypercycle, Scale, TangentVec,
};
use crate::isometry::{boost_between, frame_at, reflection_in_point};
use crate::kinematic::{check_c, KPoint};
use crate::minkowski::MinkVector;
use crate::tolerance::{EPS_CLASS, LIGHT_SPEED_BAND};

/// Tangent data at an observer measured in rapidity.
pub type Rapidity = TangentVec;

/// A relative velocity in `base^perp`, in units of speed.
#[derive(Debug, Clone, PartialEq)]
pub struct Velocity {
    base: KPoint,
    vec: MinkVector,
    c: f64,
}

impl Velocity {
    pub fn new(base: KPoint, vec: MinkVector, c: f64) -> Result<Self> {
        check_c(c)?;
        let w = TangentVec::new(base, vec, Scale::Scaled(c))?;
        let speed = w.norm();
        if speed > c * (1.0 + EPS_CLASS) {
            return Err(Error::InvalidArgument(format!(
                "speed {speed} exceeds c = {c}"
            )));
        }
        Ok(Self {
            base: w.base().clone(),
            vec: w.vec().clone(),
            c,
        })
    }

    /// Velocity given by its components in the frame of [`frame_at`].
    pub fn from_components(base: KPoint, components: &[f64], c: f64) -> Result<Self> {
        base.ensure(Region::K)?;
        if components.len() != base.n() {
            return Err(Error::DimensionMismatch {
                expected: base.n(),
                found: components.len(),
            });
        }
        let frame = frame_at(&base);
        let mut vec = MinkVector::zeros(base.n())?;
        for (e, &x) in frame[1..].iter().zip(components) {
            vec = vec.add_scaled(x, e);
        }
        Self::new(base, vec, c)
    }

    pub fn base(&self) -> &KPoint {
        &self.base
    }

    pub fn vec(&self) -> &MinkVector {
        &self.vec
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn speed(&self) -> f64 {
        self.vec.norm_sq().max(0.0).sqrt()
    }

    /// Components in the frame of [`frame_at`] at the base.
    pub fn components(&self) -> Vec<f64> {
        frame_at(&self.base)[1..]
            .iter()
            .map(|e| self.vec.form(e))
            .collect()
    }

    /// The observer moving with this velocity relative to the base.
    pub fn observer(&self) -> Result<KPoint> {
        KPoint::new(self.base.scaled(self.c).add_scaled(1.0, &self.vec))
    }
}

/// Velocity of `q` as measured by `p`: `-c^2 pi[p_c] q / <q, p_c>`.
pub fn relative_velocity(p: &KPoint, q: &KPoint, c: f64) -> Result<Velocity> {
    check_c(c)?;
    p.ensure_same_dim(q)?;
    p.ensure(Region::K)?;
    let vec = match q.region() {
        Region::K => {
            let u = unit_tangent_part(p, q.rep());
            u.scale(-c / q.rep().form(p.rep()))
        }
        Region::BoundaryK => {
            let u = q.rep().add_scaled(q.rep().form(p.rep()), p.rep());
            u.scale(c / u.norm_sq().sqrt())
        }
        Region::G => {
            return Err(Error::Region {
                expected: "K or the boundary of K",
                found: Region::G,
            })
        }
    };
    Ok(Velocity {
        base: p.clone(),
        vec,
        c,
    })
}

/// `|w_c| = c artanh(|v|/c)` along the direction of `v`.
pub fn velocity_to_rapidity(v: &Velocity) -> Result<Rapidity> {
    let speed = v.speed();
    if speed >= v.c * (1.0 - LIGHT_SPEED_BAND) {
        return Err(Error::InfiniteRapidity { speed, c: v.c });
    }
    let vec = if speed == 0.0 {
        v.vec.scale(0.0)
    } else {
        v.vec.scale(v.c * (speed / v.c).atanh() / speed)
    };
    Ok(TangentVec::new_unchecked(
        v.base.clone(),
        vec,
        Scale::Scaled(v.c),
    ))
}

/// `v = c tanh(|w_c|/c) w_c/|w_c|`. A rapidity in unit scale is first
/// rescaled by `c`.
pub fn rapidity_to_velocity(w: &Rapidity, c: f64) -> Result<Velocity> {
    check_c(c)?;
    let w = match w.scale() {
        Scale::Unit => w.rescaled(Scale::Scaled(c)),
        Scale::Scaled(wc) if wc == c => w.clone(),
        Scale::Scaled(_) => return Err(Error::ScaleMismatch),
    };
    let len = w.norm();
    let vec = if len == 0.0 {
        w.vec().scale(0.0)
    } else {
        w.vec().scale(c * (len / c).tanh() / len)
    };
    Ok(Velocity {
        base: w.base().clone(),
        vec,
        c,
    })
}

fn same_base(a: &KPoint, b: &KPoint) -> Result<()> {
    a.ensure_same_dim(b)?;
    if a.same_point(b) {
        Ok(())
    } else {
        Err(Error::BaseMismatch)
    }
}

/// `w1 (+) w2`: slide by `w1`, then by `w2` transported along the first leg,
/// and read the endpoint back at the base.
pub fn rapidity_add(w1: &Rapidity, w2: &Rapidity) -> Result<Rapidity> {
    same_base(w1.base(), w2.base())?;
    if w1.scale() != w2.scale() {
        return Err(Error::ScaleMismatch);
    }
    let q = exp_map(w1);
    let moved = parallel_transport(w2, &q)?;
    let r = exp_map(&moved);
    let sum = crate::geodesics::log_map(w1.base(), &r, w1.scale())?;
    Ok(TangentVec::new_unchecked(
        w1.base().clone(),
        sum.vec().clone(),
        w1.scale(),
    ))
}

fn check_pair(v1: &Velocity, v2: &Velocity) -> Result<()> {
    same_base(&v1.base, &v2.base)?;
    if v1.c != v2.c {
        return Err(Error::ScaleMismatch);
    }
    Ok(())
}

/// Relativistic velocity addition: transport `v2` to the observer moving
/// with `v1` and read off that observer's velocity `v2` relative to the base.
/// Equivalent to the rapidity sum, but works with the observers
/// `gamma (p + v/c)` directly instead of going through exp and log.
pub fn velocity_add(v1: &Velocity, v2: &Velocity) -> Result<Velocity> {
    check_pair(v1, v2)?;
    let c = v1.c;
    let p = v1.base.rep();
    let q = observer_of(p, &v1.vec, c)?;
    let moved = parallel_transport(
        &TangentVec::new_unchecked(v1.base.clone(), v2.vec.clone(), Scale::Scaled(c)),
        &q,
    )?;
    let r = observer_of(q.rep(), moved.vec(), c)?;
    relative_velocity(&v1.base, &r, c)
}

/// The unit observer `gamma (p + v/c)` moving with velocity `v` relative to `p`.
fn observer_of(p: &MinkVector, v: &MinkVector, c: f64) -> Result<KPoint> {
    let beta2 = v.norm_sq().max(0.0) / (c * c);
    if beta2 >= 1.0 {
        return Err(Error::InfiniteRapidity {
            speed: beta2.sqrt() * c,
            c,
        });
    }
    let gamma = 1.0 / (1.0 - beta2).sqrt();
    Ok(KPoint::from_unit(p.add_scaled(1.0 / c, v).scale(gamma)))
}

/// Einstein's collinear formula for signed speeds.
fn collinear_sum(a: f64, b: f64, c: f64) -> f64 {
    (a + b) / (1.0 + a * b / (c * c))
}

/// The plane of `v1, v2` at the base, as a 3-dimensional frame `(p, e1, e2)`
/// with `v1` along `e1`.
enum Reduced {
    /// `v1 = 0`; the sum is `v2`.
    FirstZero,
    /// `v2` is a multiple of `v1`; signed speeds along `e1`.
    Collinear { e1: MinkVector, a: f64, b: f64 },
    Plane {
        e1: MinkVector,
        e2: MinkVector,
        a: f64,
        b1: f64,
        b2: f64,
    },
}

fn reduce(v1: &Velocity, v2: &Velocity) -> Reduced {
    let a = v1.speed();
    if a == 0.0 {
        return Reduced::FirstZero;
    }
    let e1 = v1.vec.scale(1.0 / a);
    let b1 = v2.vec.form(&e1);
    let rest = v2.vec.add_scaled(-b1, &e1);
    let b2 = rest.norm_sq().max(0.0).sqrt();
    if b2 <= 1e-12 * v1.c {
        return Reduced::Collinear { e1, a, b: b1 };
    }
    let e2 = rest.scale(1.0 / b2);
    Reduced::Plane { e1, e2, a, b1, b2 }
}

fn plane_point(x: f64, y: f64, c: f64) -> Result<KPoint> {
    KPoint::from_coords(&[c, x, y])
}

fn lift(base: &KPoint, e1: &MinkVector, e2: &MinkVector, v: &Velocity, c: f64) -> Result<Velocity> {
    let comps = v.vec.coords();
    let vec = e1.scale(comps[1]).add_scaled(comps[2], e2);
    let vec = vec.add_scaled(vec.form(base.rep()), base.rep());
    Ok(Velocity {
        base: base.clone(),
        vec,
        c,
    })
}

fn collinear(v1: &Velocity, e1: &MinkVector, a: f64, b: f64) -> Velocity {
    let s = collinear_sum(a, b, v1.c);
    Velocity {
        base: v1.base.clone(),
        vec: e1.scale(s),
        c: v1.c,
    }
}

/// Velocity addition by the hypercycle "parallelogram": the sum is where the
/// hypercycle of `G<0, v1>` through `v2` meets the geodesic through `v1`
/// making with `G` the same angle as `G<0, v2>` does at `0`.
pub fn velocity_add_via_parallelogram(v1: &Velocity, v2: &Velocity) -> Result<Velocity> {
    check_pair(v1, v2)?;
    let c = v1.c;
    let (e1, e2, a, b1, b2) = match reduce(v1, v2) {
        Reduced::FirstZero => return Ok(v2.clone()),
        Reduced::Collinear { e1, a, b } => return Ok(collinear(v1, &e1, a, b)),
        Reduced::Plane { e1, e2, a, b1, b2 } => (e1, e2, a, b1, b2),
    };
    let o = KPoint::origin(2)?;
    let q1 = plane_point(a, 0.0, c)?;
    let q2 = plane_point(b1, b2, c)?;
    let axis = crate::geodesics::geodesic_through(&o, &q1)?;

    // angle from G to G' at the origin
    let phi = b2.atan2(b1);
    // direction of G continued beyond q1, and its quarter turn
    let forward = unit_tangent_part(&q1, o.rep()).scale(-1.0);
    let forward = forward.scale(1.0 / forward.norm_sq().sqrt());
    let turned = lorentz_cross(q1.rep(), &forward);
    let dir = forward.scale(phi.cos()).add_scaled(phi.sin(), &turned);
    let ahead = exp_map(&TangentVec::new_unchecked(
        q1.clone(),
        dir.clone(),
        Scale::Unit,
    ));
    let g2 = ExtGeodesic::new(q1.rep().clone(), ahead.rep().clone())?;

    let h = Hypercycle::through(axis, &q2)?;
    let hits = hypercycle_intersect(&h, &g2)?;
    let hit = hits
        .iter()
        .max_by(|x, y| x.rep().form(&dir).total_cmp(&y.rep().form(&dir)))
        .ok_or_else(|| {
            Error::InvalidArgument("hypercycle misses the translated geodesic".into())
        })?;
    let local = relative_velocity(&o, hit, c)?;
    lift(&v1.base, &e1, &e2, &local, c)
}

/// Velocity addition by components: project `v2` onto `G<0, v1>`, add the
/// horizontal part to `v1` along `G`, then restore the distance of `v2` to `G`.
pub fn velocity_add_via_components(v1: &Velocity, v2: &Velocity) -> Result<Velocity> {
    check_pair(v1, v2)?;
    let c = v1.c;
    let (e1, e2, a, b1, b2) = match reduce(v1, v2) {
        Reduced::FirstZero => return Ok(v2.clone()),
        Reduced::Collinear { e1, a, b } => return Ok(collinear(v1, &e1, a, b)),
        Reduced::Plane { e1, e2, a, b1, b2 } => (e1, e2, a, b1, b2),
    };
    let o = KPoint::origin(2)?;
    let q1 = plane_point(a, 0.0, c)?;
    let q2 = plane_point(b1, b2, c)?;
    let axis = crate::geodesics::geodesic_through(&o, &q1)?;
    let u = pole(&axis)?;
    let height = signed_distance(&axis, &q2)?;

    // foot of the perpendicular from q2 to G
    let x = q2.rep();
    let foot = x.add_scaled(-x.form(&u), &u);
    let foot = KPoint::new(foot)?;
    let along_g = MinkVector::from_slice(&[0.0, 1.0, 0.0])?;
    let horizontal = foot.rep().form(&along_g).asinh();
    let first = (a / c).atanh();
    let total = first + horizontal;
    let moved = o
        .rep()
        .scale(total.cosh())
        .add_scaled(total.sinh(), &along_g);
    let result = moved.scale(height.cosh()).add_scaled(height.sinh(), &u);
    let local = relative_velocity(&o, &KPoint::new(result)?, c)?;
    lift(&v1.base, &e1, &e2, &local, c)
}

/// `p (+)_o q`: the boost along `G<o,p>` taking `o` to `p`, applied to `q`.
pub fn mobius_add(o: &KPoint, p: &KPoint, q: &KPoint) -> Result<KPoint> {
    crate::geodesics::require_plane(o.n())?;
    o.ensure_same_dim(p)?;
    o.ensure_same_dim(q)?;
    for x in [o, p, q] {
        x.ensure(Region::K)?;
    }
    if o.same_point(p) {
        return Ok(q.clone());
    }
    boost_between(o, p)?.apply_point(q)
}

/// `p (-)_o q`: the symmetry in the midpoint of `o` and `p`, applied to `q`.
pub fn mobius_sub(o: &KPoint, p: &KPoint, q: &KPoint) -> Result<KPoint> {
    crate::geodesics::require_plane(o.n())?;
    o.ensure_same_dim(p)?;
    o.ensure_same_dim(q)?;
    for x in [o, p, q] {
        x.ensure(Region::K)?;
    }
    let m = midpoint(o, p)?;
    reflection_in_point(&m)?.apply_point(q)
}

/// `-q := R(o) q`.
pub fn mobius_neg(o: &KPoint, q: &KPoint) -> Result<KPoint> {
    o.ensure_same_dim(q)?;
    q.ensure(Region::K)?;
    reflection_in_point(o)?.apply_point(q)
}

/// Klein and Poincare disk coordinates in the frame of an observer.
#[derive(Debug, Clone)]
pub struct DiskChart {
    frame: Vec<MinkVector>,
}

impl DiskChart {
    /// Chart with `center` at the origin, axes from [`frame_at`].
    pub fn centered(center: &KPoint) -> Result<Self> {
        crate::geodesics::require_plane(center.n())?;
        center.ensure(Region::K)?;
        Ok(Self {
            frame: frame_at(center),
        })
    }

    fn coords(&self, x: &MinkVector) -> (f64, f64, f64) {
        (
            -x.form(&self.frame[0]),
            x.form(&self.frame[1]),
            x.form(&self.frame[2]),
        )
    }

    /// Klein model: `(x/t, y/t)`; ideal points land on the unit circle.
    pub fn klein(&self, p: &KPoint) -> Result<(f64, f64)> {
        if p.region() == Region::G {
            return Err(Error::Region {
                expected: "K or the boundary of K",
                found: Region::G,
            });
        }
        let (t, x, y) = self.coords(p.rep());
        Ok((x / t, y / t))
    }

    /// Poincare model: stereographic projection of the unit hyperboloid from `-center`.
    pub fn poincare(&self, p: &KPoint) -> Result<(f64, f64)> {
        let (kx, ky) = self.klein(p)?;
        let r2 = kx * kx + ky * ky;
        let s = 1.0 + (1.0 - r2).max(0.0).sqrt();
        Ok((kx / s, ky / s))
    }

    pub fn from_poincare(&self, z: (f64, f64)) -> Result<KPoint> {
        let r2 = z.0 * z.0 + z.1 * z.1;
        if r2 >= 1.0 {
            return Err(Error::InvalidArgument("point outside the unit disk".into()));
        }
        let (t, x, y) = (
            (1.0 + r2) / (1.0 - r2),
            2.0 * z.0 / (1.0 - r2),
            2.0 * z.1 / (1.0 - r2),
        );
        let rep = self.frame[0]
            .scale(t)
            .add_scaled(x, &self.frame[1])
            .add_scaled(y, &self.frame[2]);
        Ok(KPoint::from_unit(rep))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::log_map;
    use crate::kinematic::{distance, scalar_velocity};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use proptest::prelude::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn k(c: &[f64]) -> KPoint {
        KPoint::from_coords(c).unwrap()
    }

    fn origin() -> KPoint {
        KPoint::origin(2).unwrap()
    }

    fn vel(x: f64, y: f64) -> Velocity {
        Velocity::from_components(origin(), &[x, y], 1.0).unwrap()
    }

    #[test]
    fn relative_velocity_examples() {
        let p = origin();
        assert!(relative_velocity(&p, &p, 1.0).unwrap().vec().is_zero());
        let v = relative_velocity(&p, &k(&[SQRT2, 1., 0.]), 1.0).unwrap();
        assert_abs_diff_eq!(v.components()[0], 1.0 / SQRT2, epsilon = 1e-15);
        assert_abs_diff_eq!(v.components()[1], 0.0, epsilon = 1e-15);
        let photon = relative_velocity(&p, &k(&[1., 1., 0.]), 2.5).unwrap();
        assert_eq!(photon.speed(), 2.5);
        assert!(relative_velocity(&k(&[1., 1., 0.]), &p, 1.0).is_err());

        let q = k(&[3., 1., -2.]);
        let r = k(&[2., 0.5, 1.5]);
        let v = relative_velocity(&q, &r, 3.0).unwrap();
        assert_abs_diff_eq!(
            v.speed(),
            scalar_velocity(&q, &r, 3.0).unwrap(),
            epsilon = 1e-14
        );
        assert!(v.observer().unwrap().same_point(&r));
    }

    #[test]
    fn conversions() {
        let v = vel(1.0 / SQRT2, 0.0);
        let w = velocity_to_rapidity(&v).unwrap();
        assert_abs_diff_eq!(w.norm(), SQRT2.acosh(), epsilon = 1e-15);
        let back = rapidity_to_velocity(&w, 1.0).unwrap();
        assert_abs_diff_eq!(
            back.vec().as_dvector(),
            v.vec().as_dvector(),
            epsilon = 1e-15
        );
        let zero = velocity_to_rapidity(&vel(0.0, 0.0)).unwrap();
        assert_eq!(zero.norm(), 0.0);
        let photon = relative_velocity(&origin(), &k(&[1., 0., 1.]), 1.0).unwrap();
        assert!(matches!(
            velocity_to_rapidity(&photon),
            Err(Error::InfiniteRapidity { .. })
        ));
    }

    #[test]
    fn rapidity_addition() {
        let p = origin();
        let w1 = TangentVec::new(
            p.clone(),
            MinkVector::from_slice(&[0., 0.7, 0.]).unwrap(),
            Scale::Unit,
        )
        .unwrap();
        let w2 = TangentVec::new(
            p.clone(),
            MinkVector::from_slice(&[0., 1.1, 0.]).unwrap(),
            Scale::Unit,
        )
        .unwrap();
        let zero = TangentVec::zero(p.clone(), Scale::Unit).unwrap();
        assert_abs_diff_eq!(
            rapidity_add(&w1, &zero).unwrap().vec().as_dvector(),
            w1.vec().as_dvector(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(rapidity_add(&w1, &w2).unwrap().norm(), 1.8, epsilon = 1e-14);

        let w3 = TangentVec::new(
            p.clone(),
            MinkVector::from_slice(&[0., 0., 1.1]).unwrap(),
            Scale::Unit,
        )
        .unwrap();
        let sum = rapidity_add(&w1, &w3).unwrap();
        let expected = (0.7f64.cosh() * 1.1f64.cosh()).acosh();
        assert_abs_diff_eq!(sum.norm(), expected, epsilon = 1e-14);

        let other = TangentVec::zero(k(&[2., 1., 1.]), Scale::Unit).unwrap();
        assert_eq!(rapidity_add(&w1, &other).unwrap_err(), Error::BaseMismatch);
        let scaled = TangentVec::zero(p, Scale::Scaled(2.0)).unwrap();
        assert_eq!(
            rapidity_add(&w1, &scaled).unwrap_err(),
            Error::ScaleMismatch
        );
    }

    #[test]
    fn velocity_addition_examples() {
        let s = velocity_add(&vel(0.5, 0.0), &vel(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(s.components()[0], 0.8, epsilon = 1e-15);
        let s = velocity_add(&vel(0.3, 0.4), &vel(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(
            s.vec().as_dvector(),
            vel(0.3, 0.4).vec().as_dvector(),
            epsilon = 1e-15
        );
        let s = velocity_add(&vel(0.6, 0.0), &vel(0.0, 0.6)).unwrap();
        assert_abs_diff_eq!(s.speed(), (0.36f64 + 0.36 * 0.64).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn three_constructions_agree() {
        for (a, b) in [
            ((0.5, 0.1), (-0.2, 0.7)),
            ((0.9, -0.3), (0.1, -0.85)),
            ((0.0, 0.4), (0.6, 0.0)),
        ] {
            let v1 = vel(a.0, a.1);
            let v2 = vel(b.0, b.1);
            let s = velocity_add(&v1, &v2).unwrap();
            let p = velocity_add_via_parallelogram(&v1, &v2).unwrap();
            let c = velocity_add_via_components(&v1, &v2).unwrap();
            assert_abs_diff_eq!(s.vec().as_dvector(), p.vec().as_dvector(), epsilon = 1e-12);
            assert_abs_diff_eq!(s.vec().as_dvector(), c.vec().as_dvector(), epsilon = 1e-12);
        }
        let z = vel(0.0, 0.0);
        let v2 = vel(0.1, 0.5);
        let c = velocity_add_via_components(&z, &v2).unwrap();
        assert_abs_diff_eq!(c.vec().as_dvector(), v2.vec().as_dvector(), epsilon = 1e-15);
        let p = velocity_add_via_parallelogram(&v2, &z).unwrap();
        assert_abs_diff_eq!(p.vec().as_dvector(), v2.vec().as_dvector(), epsilon = 1e-15);
        let col = velocity_add_via_parallelogram(&vel(0.5, 0.0), &vel(-0.3, 0.0)).unwrap();
        assert_abs_diff_eq!(col.components()[0], 0.2 / 0.85, epsilon = 1e-15);
    }

    #[test]
    fn mobius_matches_disk_formula() {
        let o = origin();
        let chart = DiskChart::centered(&o).unwrap();
        let p = chart.from_poincare((0.5, 0.0)).unwrap();
        let q = chart.from_poincare((0.3, 0.0)).unwrap();
        let r = chart.poincare(&mobius_add(&o, &p, &q).unwrap()).unwrap();
        assert_abs_diff_eq!(r.0, 0.8 / 1.15, epsilon = 1e-15);
        assert_abs_diff_eq!(r.1, 0.0, epsilon = 1e-15);

        let a = Complex64::new(0.2, -0.5);
        let b = Complex64::new(-0.6, 0.1);
        let expected = (a + b) / (Complex64::new(1.0, 0.0) + a.conj() * b);
        let p = chart.from_poincare((a.re, a.im)).unwrap();
        let q = chart.from_poincare((b.re, b.im)).unwrap();
        let r = chart.poincare(&mobius_add(&o, &p, &q).unwrap()).unwrap();
        assert_abs_diff_eq!(r.0, expected.re, epsilon = 1e-14);
        assert_abs_diff_eq!(r.1, expected.im, epsilon = 1e-14);

        assert_eq!(mobius_add(&o, &o, &q).unwrap(), q);
        let lhs = mobius_add(&o, &p, &mobius_neg(&o, &q).unwrap()).unwrap();
        let rhs = mobius_sub(&o, &p, &q).unwrap();
        assert!(distance(&lhs, &rhs).unwrap() < 1e-14);
    }

    fn velocity_pair() -> impl Strategy<Value = (Velocity, Velocity)> {
        (0.0..0.99f64, -3.2..3.2f64, 0.0..0.99f64, -3.2..3.2f64).prop_map(|(s1, a1, s2, a2)| {
            (
                vel(s1 * a1.cos(), s1 * a1.sin()),
                vel(s2 * a2.cos(), s2 * a2.sin()),
            )
        })
    }

    proptest! {
        #[test]
        fn sums_stay_below_c((v1, v2) in velocity_pair()) {
            let s = velocity_add(&v1, &v2).unwrap();
            prop_assert!(s.speed() < 1.0);
            let t = velocity_add(&v2, &v1).unwrap();
            prop_assert!((s.speed() - t.speed()).abs() <= 1e-12);
        }

        #[test]
        fn disk_chart_round_trip(x in -0.9..0.9f64, y in -0.4..0.4f64) {
            let chart = DiskChart::centered(&k(&[2.0, 1.0, 1.0])).unwrap();
            let p = chart.from_poincare((x, y)).unwrap();
            let z = chart.poincare(&p).unwrap();
            prop_assert!((z.0 - x).abs() < 1e-12 && (z.1 - y).abs() < 1e-12);
            let back = log_map(&origin(), &p, Scale::Unit).unwrap();
            prop_assert!(back.norm().is_finite());
        }
    }
}

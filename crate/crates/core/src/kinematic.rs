//! Points of the projectivized Minkowski space and the metric invariants
//! between inertial observers.

use crate::error::{expect_region, Error, Region, Result};
use crate::minkowski::{classify, CausalTag, MinkVector};
use crate::tolerance::{EPS_CLASS, ETA_BOUNDARY, TANCE_CLAMP};

/// A projective point `P R v`.
///
/// Representatives are normalized on construction: points of K sit on the
/// future unit hyperboloid `<p,p> = -1`, points of the boundary have time
/// coordinate 1 and lie exactly on the cone, points of G have Euclidean norm 1.
#[derive(Debug, Clone, PartialEq)]
pub struct KPoint {
    rep: MinkVector,
    region: Region,
}

impl KPoint {
    pub fn new(rep: MinkVector) -> Result<Self> {
        let class = classify(&rep, EPS_CLASS);
        match class.tag {
            CausalTag::Zero => Err(Error::ZeroVector),
            CausalTag::Timelike => {
                let s = (-rep.norm_sq()).sqrt().copysign(rep.time());
                Ok(Self {
                    rep: rep.scale(1.0 / s),
                    region: Region::K,
                })
            }
            CausalTag::Lightlike => {
                let spatial_norm = rep.spatial().iter().map(|x| x * x).sum::<f64>().sqrt();
                let mut coords = Vec::with_capacity(rep.dim());
                coords.push(1.0);
                coords.extend(rep.spatial().iter().map(|x| x / spatial_norm));
                Ok(Self {
                    rep: MinkVector::new(coords)?,
                    region: Region::BoundaryK,
                })
            }
            CausalTag::Spacelike => Ok(Self {
                rep: rep.euclidean_normalized(),
                region: Region::G,
            }),
        }
    }

    pub fn from_coords(coords: &[f64]) -> Result<Self> {
        Self::new(MinkVector::from_slice(coords)?)
    }

    /// The observer at rest in the canonical frame, `P R (1, 0, ..., 0)`.
    pub fn origin(n: usize) -> Result<Self> {
        Self::new(MinkVector::basis(n, 0)?)
    }

    pub fn in_k(rep: MinkVector) -> Result<Self> {
        let p = Self::new(rep)?;
        expect_region(p.region, Region::K)?;
        Ok(p)
    }

    pub fn on_boundary(rep: MinkVector) -> Result<Self> {
        let p = Self::new(rep)?;
        expect_region(p.region, Region::BoundaryK)?;
        Ok(p)
    }

    pub fn in_g(rep: MinkVector) -> Result<Self> {
        let p = Self::new(rep)?;
        expect_region(p.region, Region::G)?;
        Ok(p)
    }

    /// Wraps a representative already on the future unit hyperboloid.
    pub(crate) fn from_unit(rep: MinkVector) -> Self {
        debug_assert!(rep.time() > 0.0);
        Self {
            rep,
            region: Region::K,
        }
    }

    pub fn rep(&self) -> &MinkVector {
        &self.rep
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn n(&self) -> usize {
        self.rep.n()
    }

    /// `<rep, rep>`; exactly -1 on K and 0 on the boundary.
    pub fn norm_sq(&self) -> f64 {
        match self.region {
            Region::K => -1.0,
            Region::BoundaryK => 0.0,
            Region::G => self.rep.norm_sq(),
        }
    }

    /// Representative of the point in the scaled space, `<p_c, p_c> = -c^2`.
    pub fn scaled(&self, c: f64) -> MinkVector {
        self.rep.scale(c)
    }

    /// Projective equality: all 2x2 minors of the normalized representatives vanish.
    pub fn same_point(&self, other: &KPoint) -> bool {
        if self.rep.dim() != other.rep.dim() {
            return false;
        }
        let a = self.rep.euclidean_normalized();
        let b = other.rep.euclidean_normalized();
        let (a, b) = (a.coords(), b.coords());
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if (a[i] * b[j] - a[j] * b[i]).abs() > EPS_CLASS {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn ensure(&self, region: Region) -> Result<()> {
        expect_region(self.region, region)
    }

    pub(crate) fn ensure_same_dim(&self, other: &KPoint) -> Result<()> {
        self.rep.ensure_same_dim(&other.rep)
    }
}

/// The tance `<p,q>^2 / (<p,p><q,q>)`.
///
/// The value is signed: at least 1 for two observers, at most 0 between an
/// observer and a point of G.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Tance(f64);

impl Tance {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// A ratio `a : b` of reals, not both zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveRatio {
    pub a: f64,
    pub b: f64,
}

impl ProjectiveRatio {
    /// `a / b`, or `None` when the ratio is `a : 0`.
    pub fn value(&self) -> Option<f64> {
        (self.b != 0.0).then(|| self.a / self.b)
    }

    /// Equality up to a common factor, relative to the sizes of both pairs.
    pub fn approx_eq(&self, other: &ProjectiveRatio, tol: f64) -> bool {
        let cross = self.a * other.b - self.b * other.a;
        cross.abs() <= tol * self.a.hypot(self.b) * other.a.hypot(other.b)
    }
}

fn non_isotropic(p: &KPoint) -> Result<()> {
    if p.region == Region::BoundaryK {
        Err(Error::Region {
            expected: "K or G",
            found: Region::BoundaryK,
        })
    } else {
        Ok(())
    }
}

pub fn tance(p: &KPoint, q: &KPoint) -> Result<Tance> {
    p.ensure_same_dim(q)?;
    non_isotropic(p)?;
    non_isotropic(q)?;
    let pq = p.rep.form(&q.rep);
    Ok(Tance(pq * pq / (p.norm_sq() * q.norm_sq())))
}

/// `-<p,q>` for two observers on the unit hyperboloid, i.e. `cosh d(p,q)`,
/// together with the Minkowski length of the chord `q - p`.
fn cosh_and_chord(p: &KPoint, q: &KPoint) -> (f64, f64) {
    let x = -p.rep.form(&q.rep);
    let diff = &q.rep - &p.rep;
    (x.max(1.0), diff.norm_sq().max(0.0).sqrt())
}

/// Distance between two points of K computed without the cancellation of
/// `arccosh` near 0.
pub(crate) fn unit_distance(p: &KPoint, q: &KPoint) -> f64 {
    let (x, chord) = cosh_and_chord(p, q);
    if x > 1.5 {
        x.acosh()
    } else {
        2.0 * (0.5 * chord).asinh()
    }
}

/// Hyperbolic distance `arccosh sqrt(ta(p,q))` in K (rapidity units).
pub fn distance(p: &KPoint, q: &KPoint) -> Result<f64> {
    p.ensure_same_dim(q)?;
    p.ensure(Region::K)?;
    q.ensure(Region::K)?;
    Ok(unit_distance(p, q))
}

pub fn lorentz_factor(p: &KPoint, q: &KPoint) -> Result<f64> {
    let ta = tance(p, q)?.value();
    p.ensure(Region::K)?;
    q.ensure(Region::K)?;
    let ta = if ta > 1.0 - TANCE_CLAMP {
        ta.max(1.0)
    } else {
        ta
    };
    Ok(ta.sqrt())
}

pub(crate) fn check_c(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "speed of light must be positive and finite, got {c}"
        )))
    }
}

/// Relative scalar velocity `c sqrt(1 - 1/ta(p,q))`; a photon `q` moves at `c`.
pub fn scalar_velocity(p: &KPoint, q: &KPoint, c: f64) -> Result<f64> {
    check_c(c)?;
    p.ensure_same_dim(q)?;
    p.ensure(Region::K)?;
    match q.region {
        Region::BoundaryK => Ok(c),
        Region::K => Ok(c * unit_distance(p, q).tanh()),
        Region::G => Err(Error::Region {
            expected: "K or the boundary of K",
            found: Region::G,
        }),
    }
}

/// Ratio `t_q : t_p` of the times an event `w` is assigned by the two observers.
pub fn time_dilation(p: &KPoint, q: &KPoint, w: &MinkVector) -> Result<ProjectiveRatio> {
    p.ensure_same_dim(q)?;
    p.rep.ensure_same_dim(w)?;
    p.ensure(Region::K)?;
    q.ensure(Region::K)?;
    if w.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(ProjectiveRatio {
        a: q.rep.form(w).abs(),
        b: p.rep.form(w).abs(),
    })
}

/// Ratio `l_q / l_p` of the lengths of a rod at rest for `p` and spanned by
/// `w`, as measured by `p` and by `q`.
pub fn length_contraction(p: &KPoint, q: &KPoint, w: &MinkVector) -> Result<f64> {
    p.ensure_same_dim(q)?;
    p.rep.ensure_same_dim(w)?;
    p.ensure(Region::K)?;
    q.ensure(Region::K)?;
    let ww = w.norm_sq();
    if w.is_zero() || classify(w, EPS_CLASS).tag != CausalTag::Spacelike {
        return Err(Error::InvalidArgument(
            "rod vector must be spacelike".into(),
        ));
    }
    let defect = p.rep.form(w);
    if defect.abs() > EPS_CLASS * w.euclidean_norm() * p.rep.euclidean_norm() {
        return Err(Error::NotTangent(defect));
    }
    // ta(q,w) / ta(p,q) with both observers normalized
    let qw = q.rep.form(w);
    let pq = p.rep.form(&q.rep);
    let ratio = -(qw * qw) / (ww * pq * pq);
    Ok((1.0 + ratio).max(0.0).sqrt())
}

/// `<u,p><p,q><q,u> / (<p,p><q,q><u,u>)`.
pub fn eta(p: &KPoint, q: &KPoint, u: &KPoint) -> Result<f64> {
    p.ensure_same_dim(q)?;
    p.ensure_same_dim(u)?;
    p.ensure(Region::K)?;
    q.ensure(Region::K)?;
    u.ensure(Region::G)?;
    let up = u.rep.form(&p.rep);
    let pq = p.rep.form(&q.rep);
    let qu = q.rep.form(&u.rep);
    Ok(up * pq * qu / u.norm_sq())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Agree,
    Disagree,
    Boundary,
}

/// Whether `p` and `q` agree on the time order of the event `u` relative to
/// the origin event.
pub fn causality_verdict(p: &KPoint, q: &KPoint, u: &KPoint) -> Result<Verdict> {
    let e = eta(p, q, u)?;
    Ok(if e.abs() <= ETA_BOUNDARY {
        Verdict::Boundary
    } else if e < 0.0 {
        Verdict::Agree
    } else {
        Verdict::Disagree
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn k(c: &[f64]) -> KPoint {
        KPoint::from_coords(c).unwrap()
    }

    #[test]
    fn normalization_per_region() {
        let p = k(&[-2.0, 0.0, 0.0]);
        assert_eq!(p.region(), Region::K);
        assert_eq!(p.rep().coords(), &[1.0, 0.0, 0.0]);
        let f = k(&[-3.0, 0.0, 3.0]);
        assert_eq!(f.region(), Region::BoundaryK);
        assert_eq!(f.rep().coords(), &[1.0, 0.0, 1.0]);
        let g = k(&[0.0, 3.0, 4.0]);
        assert_eq!(g.region(), Region::G);
        assert_abs_diff_eq!(g.rep().euclidean_norm(), 1.0, epsilon = 1e-15);
        assert!(k(&[1.0, 2.0, 0.0]).same_point(&k(&[-2.0, -4.0, 0.0])));
        assert!(!k(&[1.0, 0.0, 0.0]).same_point(&k(&[SQRT2, 1.0, 0.0])));
    }

    #[test]
    fn region_constructors() {
        let err = KPoint::in_k(MinkVector::from_slice(&[0.0, 1.0, 0.0]).unwrap()).unwrap_err();
        assert_eq!(
            err,
            Error::Region {
                expected: "K",
                found: Region::G
            }
        );
        assert!(KPoint::on_boundary(MinkVector::from_slice(&[1.0, 0.0, 1.0]).unwrap()).is_ok());
    }

    #[test]
    fn tance_examples() {
        let p = k(&[1., 0., 0.]);
        let q = k(&[SQRT2, 1., 0.]);
        assert_abs_diff_eq!(tance(&p, &p).unwrap().value(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(tance(&p, &q).unwrap().value(), 2.0, epsilon = 1e-14);
        // signed: <p,u>^2 = 1, <p,p><u,u> = -3
        let u = k(&[1., 2., 0.]);
        assert_abs_diff_eq!(tance(&p, &u).unwrap().value(), -1.0 / 3.0, epsilon = 1e-15);
        assert!(tance(&p, &k(&[1., 1., 0.])).is_err());
    }

    #[test]
    fn distance_examples() {
        let p = k(&[1., 0., 0.]);
        let q = k(&[SQRT2, 1., 0.]);
        assert_eq!(distance(&p, &p).unwrap(), 0.0);
        assert_abs_diff_eq!(distance(&p, &q).unwrap(), SQRT2.acosh(), epsilon = 1e-15);
        assert_abs_diff_eq!(distance(&q, &p).unwrap(), SQRT2.acosh(), epsilon = 1e-15);
        assert!(distance(&p, &k(&[0., 1., 0.])).is_err());
    }

    #[test]
    fn lorentz_factor_and_velocity() {
        let p = k(&[1., 0., 0.]);
        let q = k(&[SQRT2, 1., 0.]);
        assert_eq!(lorentz_factor(&p, &p).unwrap(), 1.0);
        assert_abs_diff_eq!(lorentz_factor(&p, &q).unwrap(), SQRT2, epsilon = 1e-14);
        // v = 0.6c: rep (1, 0.6, 0) in the velocity chart
        let r = k(&[1., 0.6, 0.]);
        assert_abs_diff_eq!(lorentz_factor(&p, &r).unwrap(), 1.25, epsilon = 1e-14);

        assert_eq!(scalar_velocity(&p, &p, 1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(
            scalar_velocity(&p, &q, 1.0).unwrap(),
            1.0 / SQRT2,
            epsilon = 1e-15
        );
        assert_eq!(scalar_velocity(&p, &k(&[1., 1., 0.]), 3.0).unwrap(), 3.0);
        assert!(scalar_velocity(&p, &q, 0.0).is_err());
    }

    #[test]
    fn time_dilation_examples() {
        let p = k(&[1., 0., 0.]);
        let q = k(&[SQRT2, 1., 0.]);
        let r = time_dilation(&p, &q, p.rep()).unwrap();
        assert!(r.approx_eq(&ProjectiveRatio { a: SQRT2, b: 1.0 }, 1e-15));
        let r = time_dilation(&p, &q, &MinkVector::from_slice(&[0., 0., 1.]).unwrap()).unwrap();
        assert_eq!(r.b, 0.0);
        assert_eq!(r.value(), None);
        let r = time_dilation(&p, &q, &MinkVector::from_slice(&[1., 2., 0.]).unwrap()).unwrap();
        assert_abs_diff_eq!(r.value().unwrap(), 2.0 - SQRT2, epsilon = 1e-15);
        // lightlike events are allowed
        assert!(time_dilation(&p, &q, &MinkVector::from_slice(&[1., 1., 0.]).unwrap()).is_ok());
    }

    #[test]
    fn length_contraction_examples() {
        let p = k(&[1., 0., 0.]);
        let q = k(&[SQRT2, 1., 0.]);
        let w = MinkVector::from_slice(&[0., 1., 0.]).unwrap();
        assert_abs_diff_eq!(
            length_contraction(&p, &p, &w).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            length_contraction(&p, &q, &w).unwrap(),
            1.0 / SQRT2,
            epsilon = 1e-15
        );
        let wg = k(&[0., 1., 0.]);
        let sum = tance(&wg, &q).unwrap().value() + tance(&p, &q).unwrap().value();
        assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-14);
        let transverse = MinkVector::from_slice(&[0., 0., 2.]).unwrap();
        assert_eq!(length_contraction(&p, &q, &transverse).unwrap(), 1.0);

        let not_perp = MinkVector::from_slice(&[1., 2., 0.]).unwrap();
        assert!(matches!(
            length_contraction(&p, &q, &not_perp),
            Err(Error::NotTangent(_))
        ));
        let timelike = MinkVector::from_slice(&[1., 0., 0.]).unwrap();
        assert!(length_contraction(&p, &q, &timelike).is_err());
    }

    #[test]
    fn eta_examples() {
        let p = k(&[1., 0., 0.]);
        let q = k(&[SQRT2, 1., 0.]);
        let u = k(&[1., 2., 0.]);
        let expected = SQRT2 * (2.0 - SQRT2) / 3.0;
        assert_abs_diff_eq!(eta(&p, &q, &u).unwrap(), expected, epsilon = 1e-15);
        assert_eq!(causality_verdict(&p, &q, &u).unwrap(), Verdict::Disagree);

        let e = eta(&p, &p, &u).unwrap();
        assert_abs_diff_eq!(e, tance(&p, &u).unwrap().value(), epsilon = 1e-15);
        assert_eq!(causality_verdict(&p, &p, &u).unwrap(), Verdict::Agree);

        let in_perp = k(&[0., 0., 1.]);
        assert_eq!(eta(&p, &q, &in_perp).unwrap(), 0.0);
        assert_eq!(
            causality_verdict(&p, &q, &in_perp).unwrap(),
            Verdict::Boundary
        );
        assert!(eta(&p, &u, &q).is_err());
    }

    fn observer() -> impl Strategy<Value = KPoint> {
        (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y)| {
            let t = (1.0 + x * x + y * y).sqrt();
            k(&[t, x, y])
        })
    }

    proptest! {
        #[test]
        fn tance_at_least_one(p in observer(), q in observer()) {
            prop_assert!(tance(&p, &q).unwrap().value() >= 1.0 - 1e-12);
        }

        #[test]
        fn triangle_inequality(p in observer(), q in observer(), r in observer()) {
            let d = |a: &KPoint, b: &KPoint| distance(a, b).unwrap();
            prop_assert!(d(&p, &r) <= d(&p, &q) + d(&q, &r) + 1e-12);
        }

        #[test]
        fn representative_invariance(p in observer(), q in observer(), s in prop_oneof![-5.0..-0.1f64, 0.1..5.0f64]) {
            let scaled = KPoint::new(q.rep().scale(s)).unwrap();
            let a = tance(&p, &q).unwrap().value();
            let b = tance(&p, &scaled).unwrap().value();
            prop_assert!((a - b).abs() <= 1e-12 * a);
        }
    }
}

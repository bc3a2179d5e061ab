//! Extended geodesics, polarity, the exponential map and parallel transport
//! on the hyperboloid, and the horocycle and hypercycle loci.

use nalgebra::Matrix3;

use crate::error::{Error, Region, Result};
use crate::kinematic::{check_c, unit_distance, KPoint};
use crate::minkowski::{orthogonal_complement, orthonormalize, MinkVector};
use crate::tolerance::EPS_CLASS;

/// Signature of the form restricted to the plane of an extended geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signature {
    /// Meets K: an ordinary geodesic with two vertices.
    MinusPlus,
    /// Tangent to the absolute.
    PlusZero,
    /// Misses the closure of K.
    PlusPlus,
}

/// A projective line `P W` for a 2-dimensional subspace `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtGeodesic {
    span: [MinkVector; 2],
    signature: Signature,
}

impl ExtGeodesic {
    pub fn new(a: MinkVector, b: MinkVector) -> Result<Self> {
        a.ensure_same_dim(&b)?;
        // Gram determinant and |a ^ b|^2 as sums over 2x2 minors, which
        // stays accurate for nearly parallel spanning vectors
        let (x, y) = (a.coords(), b.coords());
        let (mut det, mut wedge) = (0.0, 0.0);
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let m = (x[i] * y[j] - x[j] * y[i]).powi(2);
                wedge += m;
                det += if i == 0 { -m } else { m };
            }
        }
        let scale = a.euclidean_norm().powi(2) * b.euclidean_norm().powi(2);
        if wedge <= 1e-20 * scale {
            return Err(Error::LinearlyDependent);
        }
        let signature = if det < -EPS_CLASS * wedge {
            Signature::MinusPlus
        } else if det > EPS_CLASS * wedge {
            Signature::PlusPlus
        } else {
            Signature::PlusZero
        };
        Ok(Self {
            span: [a, b],
            signature,
        })
    }

    pub fn span(&self) -> &[MinkVector; 2] {
        &self.span
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn n(&self) -> usize {
        self.span[0].n()
    }

    fn require_minus_plus(&self) -> Result<()> {
        if self.signature == Signature::MinusPlus {
            Ok(())
        } else {
            Err(Error::WrongSignature(self.signature))
        }
    }

    /// Unit timelike and unit spacelike vectors spanning the plane. The time
    /// vector is future oriented and, when the first spanning vector is
    /// timelike, proportional to it; the space vector then points toward the
    /// second spanning vector.
    pub(crate) fn frame(&self) -> Result<(MinkVector, MinkVector)> {
        self.require_minus_plus()?;
        let basis = orthonormalize(&self.span)?;
        let (mut t, mut s) = if basis[0].norm_sq() < 0.0 {
            (basis[0].clone(), basis[1].clone())
        } else {
            (basis[1].clone(), basis[0].clone())
        };
        if t.time() < 0.0 {
            t = -&t;
        }
        // orient s toward span[1] as seen from span[0]
        let a = &self.span[0];
        let b = &self.span[1];
        // determinant of (a, b) in the (t, s) coordinates
        let det = s.form(a) * b.form(&t) - t.form(a) * s.form(b);
        if det < 0.0 {
            s = -&s;
        }
        Ok((t, s))
    }

    /// Whether the point lies on the geodesic.
    pub fn contains(&self, x: &KPoint) -> bool {
        if x.rep().dim() != self.span[0].dim() {
            return false;
        }
        let Ok(mut basis) = orthonormalize(&self.span) else {
            return false;
        };
        let mut r = x.rep().euclidean_normalized();
        for e in basis.drain(..) {
            let c = r.form(&e) * e.norm_sq().signum();
            r = r.add_scaled(-c, &e);
        }
        r.euclidean_norm() <= 1e-9
    }
}

pub fn geodesic_through(p: &KPoint, q: &KPoint) -> Result<ExtGeodesic> {
    p.ensure_same_dim(q)?;
    if p.same_point(q) {
        return Err(Error::CoincidentPoints);
    }
    ExtGeodesic::new(p.rep().clone(), q.rep().clone())
}

/// The two isotropic points of a geodesic meeting K. The first vertex is the
/// one reached from the first spanning point through the second.
pub fn vertices(g: &ExtGeodesic) -> Result<(KPoint, KPoint)> {
    let (t, s) = g.frame()?;
    Ok((KPoint::on_boundary(&t + &s)?, KPoint::on_boundary(&t - &s)?))
}

/// Orthonormal basis of `x^perp`, the polar hyperplane of a point of G.
pub fn polar(x: &KPoint) -> Result<Vec<MinkVector>> {
    x.ensure(Region::G)?;
    orthogonal_complement(std::slice::from_ref(x.rep()))
}

pub(crate) fn require_plane(n: usize) -> Result<()> {
    if n == 2 {
        Ok(())
    } else {
        Err(Error::RequiresPlane(n))
    }
}

/// Polar geodesic of a point of G in the plane case.
pub fn polar_geodesic(x: &KPoint) -> Result<ExtGeodesic> {
    require_plane(x.n())?;
    let basis = polar(x)?;
    ExtGeodesic::new(basis[0].clone(), basis[1].clone())
}

/// The vector `u` with `<u, x> = det[a, b, x]` for all `x` (plane case only).
pub(crate) fn lorentz_cross(a: &MinkVector, b: &MinkVector) -> MinkVector {
    let (a, b) = (a.coords(), b.coords());
    let cross = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    MinkVector::from_dvector(nalgebra::DVector::from_vec(vec![
        -cross[0], cross[1], cross[2],
    ]))
}

pub(crate) fn det3(a: &MinkVector, b: &MinkVector, c: &MinkVector) -> f64 {
    let m = Matrix3::from_columns(&[
        nalgebra::Vector3::from_column_slice(a.coords()),
        nalgebra::Vector3::from_column_slice(b.coords()),
        nalgebra::Vector3::from_column_slice(c.coords()),
    ]);
    m.determinant()
}

/// Unit spacelike normal to a geodesic in the plane case, oriented so that
/// `<x, pole> > 0` exactly when `det[span0, span1, x] > 0`.
pub fn pole(g: &ExtGeodesic) -> Result<MinkVector> {
    require_plane(g.n())?;
    if g.signature == Signature::PlusZero {
        return Err(Error::DegenerateForm);
    }
    let u = lorentz_cross(&g.span[0], &g.span[1]);
    let uu = u.norm_sq();
    if g.signature == Signature::MinusPlus {
        Ok(u.scale(1.0 / uu.sqrt()))
    } else {
        // a plane missing K has a timelike pole
        Ok(u.scale(1.0 / (-uu).sqrt()))
    }
}

/// Polar point of a geodesic (plane case).
pub fn polar_point(g: &ExtGeodesic) -> Result<KPoint> {
    KPoint::new(pole(g)?)
}

/// Midpoint of the segment joining two observers.
pub fn midpoint(p: &KPoint, q: &KPoint) -> Result<KPoint> {
    p.ensure_same_dim(q)?;
    p.ensure(Region::K)?;
    q.ensure(Region::K)?;
    let sum = p.rep() + q.rep();
    let s = (-sum.norm_sq()).sqrt();
    Ok(KPoint::from_unit(sum.scale(1.0 / s)))
}

/// Whether a tangent vector is measured in K or in the scaled space with
/// curvature `-1/c^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scale {
    Unit,
    Scaled(f64),
}

impl Scale {
    pub fn c(self) -> f64 {
        match self {
            Scale::Unit => 1.0,
            Scale::Scaled(c) => c,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            Scale::Unit => Ok(()),
            Scale::Scaled(c) => check_c(c),
        }
    }
}

/// A tangent vector at an observer, realized in `base^perp`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVec {
    base: KPoint,
    vec: MinkVector,
    scale: Scale,
}

impl TangentVec {
    /// Checks tangency to relative tolerance and removes the residual normal part.
    pub fn new(base: KPoint, vec: MinkVector, scale: Scale) -> Result<Self> {
        base.ensure(Region::K)?;
        base.rep().ensure_same_dim(&vec)?;
        scale.validate()?;
        let p = base.rep();
        let defect = vec.form(p);
        if defect.abs() > EPS_CLASS * vec.euclidean_norm() * p.euclidean_norm() {
            return Err(Error::NotTangent(defect));
        }
        let vec = vec.add_scaled(defect, p);
        Ok(Self { base, vec, scale })
    }

    pub(crate) fn new_unchecked(base: KPoint, vec: MinkVector, scale: Scale) -> Self {
        Self { base, vec, scale }
    }

    pub fn zero(base: KPoint, scale: Scale) -> Result<Self> {
        let vec = MinkVector::zeros(base.n())?;
        Self::new(base, vec, scale)
    }

    pub fn base(&self) -> &KPoint {
        &self.base
    }

    pub fn vec(&self) -> &MinkVector {
        &self.vec
    }

    pub fn scale(&self) -> Scale {
        self.scale
    }

    /// Length in the metric of the space the vector lives in.
    pub fn norm(&self) -> f64 {
        self.vec.norm_sq().max(0.0).sqrt()
    }

    /// Length converted to distance in K.
    pub fn rapidity(&self) -> f64 {
        self.norm() / self.scale.c()
    }

    pub fn scaled_by(&self, s: f64) -> TangentVec {
        Self::new_unchecked(self.base.clone(), self.vec.scale(s), self.scale)
    }

    /// The same tangent data expressed in another scale (`|w_c| = c |w|`).
    pub fn rescaled(&self, scale: Scale) -> TangentVec {
        let s = scale.c() / self.scale.c();
        Self::new_unchecked(self.base.clone(), self.vec.scale(s), scale)
    }
}

/// Riemannian exponential map.
pub fn exp_map(w: &TangentVec) -> KPoint {
    let len = w.norm();
    if len == 0.0 {
        return w.base.clone();
    }
    let t = len / w.scale.c();
    let dir = w.vec.scale(1.0 / len);
    let rep = w.base.rep().scale(t.cosh()).add_scaled(t.sinh(), &dir);
    KPoint::from_unit(rep)
}

/// `pi[p] q` for two unit observers, computed as `(q - p) + (1 + <q,p>) p`
/// with `1 + <q,p> = -<q - p, q - p> / 2` to avoid cancellation.
pub(crate) fn unit_tangent_part(p: &KPoint, q: &MinkVector) -> MinkVector {
    let diff = q - p.rep();
    let c = -0.5 * diff.norm_sq();
    diff.add_scaled(c, p.rep())
}

/// Inverse of the exponential map: the tangent vector at `p` pointing along
/// the geodesic to `q` with length `d(p,q)`.
pub fn log_map(p: &KPoint, q: &KPoint, scale: Scale) -> Result<TangentVec> {
    p.ensure_same_dim(q)?;
    p.ensure(Region::K)?;
    q.ensure(Region::K)?;
    scale.validate()?;
    let u = unit_tangent_part(p, q.rep());
    let norm = u.norm_sq().max(0.0).sqrt();
    let d = unit_distance(p, q);
    if norm == 0.0 || d == 0.0 {
        return TangentVec::zero(p.clone(), scale);
    }
    let vec = u.scale(d * scale.c() / norm);
    Ok(TangentVec::new_unchecked(p.clone(), vec, scale))
}

/// Image of `x` under the boost carrying the unit observer `a` to `b` along
/// their geodesic (identity on the orthogonal complement).
pub(crate) fn boost_apply(a: &MinkVector, b: &MinkVector, x: &MinkVector) -> MinkVector {
    let s = a + b;
    let denom = 1.0 - a.form(b);
    x.add_scaled(x.form(&s) / denom, &s)
        .add_scaled(-2.0 * x.form(a), b)
}

/// Parallel transport along the geodesic segment from `w.base` to `to`.
pub fn parallel_transport(w: &TangentVec, to: &KPoint) -> Result<TangentVec> {
    w.base.ensure_same_dim(to)?;
    to.ensure(Region::K)?;
    let a = w.base.rep();
    let b = to.rep();
    // For v in a^perp the boost reduces to v + <v,b>/(1 - <a,b>) (a + b).
    let s = a + b;
    let vec = w.vec.add_scaled(w.vec.form(b) / (1.0 - a.form(b)), &s);
    Ok(TangentVec::new_unchecked(to.clone(), vec, w.scale))
}

/// The horocycle `{x in K : <f, x> = -level}` with `f` the stored
/// representative of the ideal point (time coordinate 1).
#[derive(Debug, Clone, PartialEq)]
pub struct Horocycle {
    ideal: KPoint,
    level: f64,
}

impl Horocycle {
    pub fn new(ideal: KPoint, level: f64) -> Result<Self> {
        ideal.ensure(Region::BoundaryK)?;
        if !(level.is_finite() && level > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "horocycle level must be positive, got {level}"
            )));
        }
        Ok(Self { ideal, level })
    }

    pub fn ideal(&self) -> &KPoint {
        &self.ideal
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    /// Level of the horocycle about the same ideal point through `x`.
    pub fn level_of(&self, x: &KPoint) -> Result<f64> {
        self.ideal.ensure_same_dim(x)?;
        x.ensure(Region::K)?;
        Ok(-self.ideal.rep().form(x.rep()))
    }

    /// Membership to relative tolerance `eps`.
    pub fn contains(&self, x: &KPoint, eps: f64) -> bool {
        self.level_of(x)
            .map(|l| (l - self.level).abs() <= eps * self.level)
            .unwrap_or(false)
    }

    /// Points of the horocycle in the plane case, parameterized by the
    /// parabolic flow fixing the ideal point (`s = 0` is the point on the
    /// geodesic from the origin observer to the ideal point).
    pub fn point_at(&self, s: f64) -> Result<KPoint> {
        require_plane(self.ideal.n())?;
        let f = self.ideal.rep();
        // On the ray from the origin toward f the level is e^{-t}.
        let t = -self.level.ln();
        let dir = MinkVector::from_slice(&[0.0, f[1], f[2]])?;
        let o = KPoint::origin(2)?;
        let start = exp_map(&TangentVec::new_unchecked(o, dir.scale(t), Scale::Unit));
        let e = MinkVector::from_slice(&[0.0, -f[2], f[1]])?;
        let x = start.rep();
        let xf = x.form(f);
        let xe = x.form(&e);
        let rep = x
            .add_scaled(s * xf, &e)
            .add_scaled(-s * xe - 0.5 * s * s * xf, f);
        Ok(KPoint::from_unit(rep))
    }
}

pub fn horocycle_through(f: &KPoint, p: &KPoint) -> Result<Horocycle> {
    f.ensure_same_dim(p)?;
    f.ensure(Region::BoundaryK)?;
    p.ensure(Region::K)?;
    Horocycle::new(f.clone(), -f.rep().form(p.rep()))
}

/// Signed distance from an observer to a geodesic (plane case); positive on
/// the side where `det[span0, span1, x] > 0`.
pub fn signed_distance(g: &ExtGeodesic, x: &KPoint) -> Result<f64> {
    g.require_minus_plus()?;
    x.ensure(Region::K)?;
    let u = pole(g)?;
    Ok(x.rep().form(&u).asinh())
}

/// The locus of observers at a fixed signed distance from a geodesic.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypercycle {
    axis: ExtGeodesic,
    signed_distance: f64,
}

impl Hypercycle {
    pub fn new(axis: ExtGeodesic, signed_distance: f64) -> Result<Self> {
        require_plane(axis.n())?;
        axis.require_minus_plus()?;
        if !signed_distance.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self {
            axis,
            signed_distance,
        })
    }

    pub fn through(axis: ExtGeodesic, x: &KPoint) -> Result<Self> {
        let s = signed_distance(&axis, x)?;
        Self::new(axis, s)
    }

    pub fn axis(&self) -> &ExtGeodesic {
        &self.axis
    }

    pub fn signed_distance(&self) -> f64 {
        self.signed_distance
    }

    /// Point of the hypercycle over the axis point at signed arc length `t`
    /// from the axis frame origin.
    pub fn point_at(&self, t: f64) -> Result<KPoint> {
        let (e0, e1) = self.axis.frame()?;
        let u = pole(&self.axis)?;
        let foot = e0.scale(t.cosh()).add_scaled(t.sinh(), &e1);
        let s = self.signed_distance;
        Ok(KPoint::from_unit(
            foot.scale(s.cosh()).add_scaled(s.sinh(), &u),
        ))
    }
}

/// Observers on `g` lying on the hypercycle `h`: zero, one or two points.
/// A geodesic that coincides with the hypercycle yields no isolated points.
pub fn hypercycle_intersect(h: &Hypercycle, g: &ExtGeodesic) -> Result<Vec<KPoint>> {
    require_plane(g.n())?;
    if g.n() != h.axis.n() {
        return Err(Error::DimensionMismatch {
            expected: h.axis.n() + 1,
            found: g.n() + 1,
        });
    }
    let (e0, e1) = g.frame()?;
    let u = pole(&h.axis)?;
    let alpha = e0.form(&u);
    let beta = e1.form(&u);
    let sigma = h.signed_distance.sinh();
    // alpha cosh(th) + beta sinh(th) = sigma; with y = e^th:
    // (alpha + beta) y^2 - 2 sigma y + (alpha - beta) = 0
    let qa = alpha + beta;
    let qc = alpha - beta;
    let scale = alpha.abs().max(beta.abs()).max(sigma.abs());
    if scale == 0.0 {
        return Ok(Vec::new());
    }
    let tiny = 1e-14 * scale;
    let mut roots = Vec::new();
    if qa.abs() <= tiny {
        if sigma.abs() > tiny {
            roots.push(qc / (2.0 * sigma));
        }
    } else {
        let disc = sigma * sigma - qa * qc;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            let q = sigma + sq.copysign(sigma);
            if q != 0.0 {
                roots.push(q / qa);
                if sq > tiny {
                    roots.push(qc / q);
                }
            } else {
                roots.push(0.0);
            }
        } else if disc >= -tiny * scale {
            roots.push(sigma / qa);
        }
    }
    let f = |th: f64| alpha * th.cosh() + beta * th.sinh() - sigma;
    let df = |th: f64| alpha * th.sinh() + beta * th.cosh();
    let mut thetas: Vec<f64> = Vec::new();
    for y in roots {
        if !(y > 0.0 && y.is_finite()) {
            continue;
        }
        let mut th = y.ln();
        for _ in 0..4 {
            let d = df(th);
            if d == 0.0 {
                break;
            }
            let step = f(th) / d;
            th -= step;
            if step.abs() <= 1e-16 * (1.0 + th.abs()) {
                break;
            }
        }
        if thetas.iter().all(|t: &f64| (t - th).abs() > 1e-12) {
            thetas.push(th);
        }
    }
    Ok(thetas
        .into_iter()
        .map(|th| KPoint::from_unit(e0.scale(th.cosh()).add_scaled(th.sinh(), &e1)))
        .collect())
}

/// Point at distance `t` along the unit-speed geodesic from `p` toward `q`.
pub fn along(p: &KPoint, q: &KPoint, t: f64) -> Result<KPoint> {
    let w = log_map(p, q, Scale::Unit)?;
    let len = w.norm();
    if len == 0.0 {
        return Err(Error::CoincidentPoints);
    }
    Ok(exp_map(&w.scaled_by(t / len)))
}

/// Points of the metric circle of radius `r` about `center` (plane case),
/// at polar angle `theta` in the positively oriented frame at the center.
pub fn circle_point(center: &KPoint, r: f64, theta: f64) -> Result<KPoint> {
    require_plane(center.n())?;
    center.ensure(Region::K)?;
    let frame = crate::isometry::frame_at(center);
    let dir = frame[1]
        .scale(theta.cos())
        .add_scaled(theta.sin(), &frame[2]);
    Ok(exp_map(&TangentVec::new_unchecked(
        center.clone(),
        dir.scale(r),
        Scale::Unit,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematic::distance;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn v(c: &[f64]) -> MinkVector {
        MinkVector::from_slice(c).unwrap()
    }

    fn k(c: &[f64]) -> KPoint {
        KPoint::from_coords(c).unwrap()
    }

    #[test]
    fn signatures() {
        let g = geodesic_through(&k(&[1., 0., 0.]), &k(&[SQRT2, 1., 0.])).unwrap();
        assert_eq!(g.signature(), Signature::MinusPlus);
        let g = geodesic_through(&k(&[0., 1., 0.]), &k(&[0., 0., 1.])).unwrap();
        assert_eq!(g.signature(), Signature::PlusPlus);
        let g = geodesic_through(&k(&[0., 0., 1.]), &k(&[1., 1., 0.])).unwrap();
        assert_eq!(g.signature(), Signature::PlusZero);
        // the plane of (0,1,0) and (1,1,0) has Gram determinant -1
        let g = geodesic_through(&k(&[0., 1., 0.]), &k(&[1., 1., 0.])).unwrap();
        assert_eq!(g.signature(), Signature::MinusPlus);
        assert_eq!(
            geodesic_through(&k(&[1., 0., 0.]), &k(&[2., 0., 0.])).unwrap_err(),
            Error::CoincidentPoints
        );
    }

    #[test]
    fn vertices_of_x_axis() {
        let g = ExtGeodesic::new(v(&[1., 0., 0.]), v(&[0., 1., 0.])).unwrap();
        let (a, b) = vertices(&g).unwrap();
        assert!(a.same_point(&k(&[1., 1., 0.])));
        assert!(b.same_point(&k(&[1., -1., 0.])));
        assert_abs_diff_eq!(a.rep().norm_sq(), 0.0, epsilon = 1e-15);
        let pp = ExtGeodesic::new(v(&[0., 1., 0.]), v(&[0., 0., 1.])).unwrap();
        assert_eq!(
            vertices(&pp).unwrap_err(),
            Error::WrongSignature(Signature::PlusPlus)
        );
    }

    #[test]
    fn polarity() {
        let basis = polar(&k(&[0., 0., 1.])).unwrap();
        let g = ExtGeodesic::new(basis[0].clone(), basis[1].clone()).unwrap();
        assert!(g.contains(&k(&[1., 0., 0.])));
        assert!(g.contains(&k(&[0., 1., 0.])));

        let x = k(&[1., 2., 0.]);
        let g = polar_geodesic(&x).unwrap();
        assert!(g.contains(&k(&[2., 1., 0.])));
        assert!(g.contains(&k(&[0., 0., 1.])));
        assert!(polar_point(&g).unwrap().same_point(&x));
        assert!(polar(&k(&[1., 0., 0.])).is_err());
    }

    #[test]
    fn exp_log_examples() {
        let p = k(&[1., 0., 0.]);
        let d = SQRT2.acosh();
        let w = TangentVec::new(p.clone(), v(&[0., d, 0.]), Scale::Unit).unwrap();
        let q = exp_map(&w);
        assert_abs_diff_eq!(
            q.rep().as_dvector(),
            v(&[SQRT2, 1., 0.]).as_dvector(),
            epsilon = 1e-15
        );

        let back = log_map(&p, &k(&[SQRT2, 1., 0.]), Scale::Unit).unwrap();
        assert_abs_diff_eq!(
            back.vec().as_dvector(),
            v(&[0., d, 0.]).as_dvector(),
            epsilon = 1e-15
        );

        assert!(log_map(&p, &p, Scale::Unit).unwrap().vec().is_zero());
        assert_eq!(
            exp_map(&TangentVec::zero(p.clone(), Scale::Unit).unwrap()),
            p
        );

        let scaled = TangentVec::new(p.clone(), v(&[0., 3.0 * d, 0.]), Scale::Scaled(3.0)).unwrap();
        assert_abs_diff_eq!(distance(&p, &exp_map(&scaled)).unwrap(), d, epsilon = 1e-15);
        assert!(matches!(
            TangentVec::new(p, v(&[1., 0., 0.]), Scale::Unit),
            Err(Error::NotTangent(_))
        ));
    }

    #[test]
    fn transport_of_geodesic_tangent() {
        let p = k(&[1., 0., 0.]);
        let q = k(&[2.0f64.sqrt(), 1., 0.]);
        let w = log_map(&p, &q, Scale::Unit).unwrap();
        let moved = parallel_transport(&w, &q).unwrap();
        // at q the tangent continuing away from p is minus the log toward p
        let back = log_map(&q, &p, Scale::Unit).unwrap();
        assert_abs_diff_eq!(
            moved.vec().as_dvector(),
            (-back.vec()).as_dvector(),
            epsilon = 1e-14
        );
        let same = parallel_transport(&w, &p).unwrap();
        assert_abs_diff_eq!(
            same.vec().as_dvector(),
            w.vec().as_dvector(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn horocycle_levels() {
        let f = k(&[1., 1., 0.]);
        let p = k(&[1., 0., 0.]);
        let h = horocycle_through(&f, &p).unwrap();
        assert_abs_diff_eq!(h.level(), 1.0, epsilon = 1e-15);
        for t in [0.5, 1.0, 3.0] {
            let toward =
                exp_map(&TangentVec::new(p.clone(), v(&[0., t, 0.]), Scale::Unit).unwrap());
            let away = exp_map(&TangentVec::new(p.clone(), v(&[0., -t, 0.]), Scale::Unit).unwrap());
            assert_abs_diff_eq!(h.level_of(&toward).unwrap(), (-t).exp(), epsilon = 1e-14);
            assert_abs_diff_eq!(h.level_of(&away).unwrap(), t.exp(), epsilon = 1e-13);
        }
        for s in [-2.0, 0.3, 5.0] {
            let x = h.point_at(s).unwrap();
            assert!(h.contains(&x, 1e-12));
        }
    }

    #[test]
    fn hypercycle_cases() {
        let axis = ExtGeodesic::new(v(&[1., 0., 0.]), v(&[0., 1., 0.])).unwrap();
        let other = ExtGeodesic::new(v(&[1., 0., 0.]), v(&[0., 0., 1.])).unwrap();
        let h0 = Hypercycle::new(axis.clone(), 0.0).unwrap();
        let pts = hypercycle_intersect(&h0, &other).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].same_point(&k(&[1., 0., 0.])));

        let h = Hypercycle::new(axis.clone(), 0.7).unwrap();
        assert!(hypercycle_intersect(&h, &axis).unwrap().is_empty());
        let pts = hypercycle_intersect(&h, &other).unwrap();
        assert_eq!(pts.len(), 1);
        assert_abs_diff_eq!(
            signed_distance(&axis, &pts[0]).unwrap(),
            0.7,
            epsilon = 1e-14
        );

        // a geodesic crossing the hypercycle twice: the polar of a point near the axis
        let far = ExtGeodesic::new(v(&[1., 0., 0.5]), v(&[0., 1., 0.])).unwrap();
        let h = Hypercycle::new(axis.clone(), 0.7).unwrap();
        let pts = hypercycle_intersect(&h, &far).unwrap();
        for x in &pts {
            assert_abs_diff_eq!(signed_distance(&axis, x).unwrap(), 0.7, epsilon = 1e-12);
        }
        let x = h.point_at(1.3).unwrap();
        assert_abs_diff_eq!(signed_distance(&axis, &x).unwrap(), 0.7, epsilon = 1e-14);
    }

    fn observer() -> impl Strategy<Value = KPoint> {
        (-4.0..4.0f64, -4.0..4.0f64).prop_map(|(x, y)| {
            let t = (1.0 + x * x + y * y).sqrt();
            k(&[t, x, y])
        })
    }

    proptest! {
        #[test]
        fn exp_log_round_trip(p in observer(), q in observer()) {
            let w = log_map(&p, &q, Scale::Unit).unwrap();
            let r = exp_map(&w);
            prop_assert!(distance(&q, &r).unwrap() <= 1e-10);
            prop_assert!((w.norm() - distance(&p, &q).unwrap()).abs() <= 1e-10);
        }

        #[test]
        fn transport_preserves_norm(p in observer(), q in observer(), a in -3.0..3.0f64, b in -3.0..3.0f64) {
            let raw = v(&[0., a, b]);
            let w = parallel_transport(&TangentVec::new(KPoint::origin(2).unwrap(), raw, Scale::Unit).unwrap(), &p).unwrap();
            let moved = parallel_transport(&w, &q).unwrap();
            prop_assert!((moved.norm() - w.norm()).abs() <= 1e-12 * (1.0 + w.norm()) * p.rep().time() * q.rep().time());
            prop_assert!(moved.vec().form(q.rep()).abs() <= 1e-10 * moved.vec().euclidean_norm().max(1.0));
        }

        #[test]
        fn geodesics_are_distance_additive(p in observer(), a in -1.0..1.0f64, b in -1.0..1.0f64, t in 0.0..10.0f64) {
            prop_assume!(a.hypot(b) > 1e-3);
            let frame = crate::isometry::frame_at(&p);
            let w = TangentVec::new(p.clone(), frame[1].scale(a).add_scaled(b, &frame[2]), Scale::Unit).unwrap();
            let unit = w.scaled_by(1.0 / w.norm());
            let r = exp_map(&unit.scaled_by(t));
            prop_assert!((distance(&p, &r).unwrap() - t).abs() <= 1e-9 * (1.0 + t));
        }
    }
}

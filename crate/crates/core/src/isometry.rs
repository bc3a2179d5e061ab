//! Form-preserving linear maps acting on kinematic space: boosts, reflections,
//! rotations, null rotations, their classification in the plane case, and the
//! Wigner rotation of a triangle of observers.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Region, Result};
use crate::geodesics::{
    boost_apply, det3, pole, require_plane, unit_tangent_part, ExtGeodesic, Signature,
};
use crate::kinematic::KPoint;
use crate::minkowski::{metric, MinkVector};
use crate::tolerance::{DEGENERATE_AREA, LORENTZ_DEFECT, PARABOLIC_TRACE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsometryClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
    Reflection,
    /// Orientation preserving maps for `n > 2`, where no classification is attempted.
    General,
}

/// An element of `O+(1,n)` in the canonical basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LorentzMap {
    matrix: DMatrix<f64>,
    class: IsometryClass,
}

/// Largest entry of `M^T eta M - eta`, relative to `max(1, |M|_max^2)`.
pub fn lorentz_defect(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows() - 1;
    let eta = metric(n);
    let defect = (m.transpose() * &eta * m - &eta).amax();
    defect / m.amax().powi(2).max(1.0)
}

impl LorentzMap {
    /// Validates the matrix and classifies it (plane case only).
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let dim = matrix.nrows();
        if matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: matrix.ncols(),
            });
        }
        if !(3..=17).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim.saturating_sub(1)));
        }
        if matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let defect = lorentz_defect(&matrix);
        if defect > LORENTZ_DEFECT {
            return Err(Error::NotLorentz(defect));
        }
        if matrix[(0, 0)] <= 0.0 {
            return Err(Error::InvalidArgument(
                "map reverses time orientation".into(),
            ));
        }
        let class = classify_matrix(&matrix);
        Ok(Self { matrix, class })
    }

    fn with_class(matrix: DMatrix<f64>, class: IsometryClass) -> Self {
        Self { matrix, class }
    }

    pub fn identity(n: usize) -> Result<Self> {
        if !(2..=16).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        Ok(Self::with_class(
            DMatrix::identity(n + 1, n + 1),
            IsometryClass::Identity,
        ))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn class(&self) -> IsometryClass {
        self.class
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows() - 1
    }

    pub fn defect(&self) -> f64 {
        lorentz_defect(&self.matrix)
    }

    pub fn apply(&self, x: &MinkVector) -> Result<MinkVector> {
        if x.dim() != self.matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                found: x.dim(),
            });
        }
        Ok(MinkVector::from_dvector(&self.matrix * x.as_dvector()))
    }

    /// Image of a projective point. Observers keep their hyperboloid
    /// representative without renormalization.
    pub fn apply_point(&self, p: &KPoint) -> Result<KPoint> {
        let image = self.apply(p.rep())?;
        match p.region() {
            Region::K => Ok(KPoint::from_unit(image)),
            _ => KPoint::new(image),
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &LorentzMap) -> Result<LorentzMap> {
        if self.matrix.nrows() != other.matrix.nrows() {
            return Err(Error::DimensionMismatch {
                expected: self.matrix.nrows(),
                found: other.matrix.nrows(),
            });
        }
        let m = &self.matrix * &other.matrix;
        let class = classify_matrix(&m);
        Ok(Self::with_class(m, class))
    }

    /// `eta M^T eta`.
    pub fn inverse(&self) -> LorentzMap {
        let eta = metric(self.n());
        Self::with_class(&eta * self.matrix.transpose() * &eta, self.class)
    }
}

fn classify_matrix(m: &DMatrix<f64>) -> IsometryClass {
    let dim = m.nrows();
    if (m - DMatrix::<f64>::identity(dim, dim)).amax() <= 1e-12 {
        return IsometryClass::Identity;
    }
    if m.determinant() < 0.0 {
        return IsometryClass::Reflection;
    }
    if dim != 3 {
        return IsometryClass::General;
    }
    let tr = m.trace();
    if (tr - 3.0).abs() <= PARABOLIC_TRACE {
        IsometryClass::Parabolic
    } else if tr < 3.0 {
        IsometryClass::Elliptic
    } else {
        IsometryClass::Hyperbolic
    }
}

/// Classification of a plane isometry from its trace and determinant.
pub fn classify_isometry(m: &LorentzMap) -> Result<IsometryClass> {
    require_plane(m.n())?;
    let defect = m.defect();
    if defect > LORENTZ_DEFECT {
        return Err(Error::NotLorentz(defect));
    }
    Ok(classify_matrix(&m.matrix))
}

/// `x -> x + <x, a+b>/(1 - <a,b>) (a+b) - 2 <x,a> b` as a matrix.
fn boost_matrix(a: &MinkVector, b: &MinkVector) -> DMatrix<f64> {
    let dim = a.dim();
    let mut m = DMatrix::zeros(dim, dim);
    for j in 0..dim {
        let mut e = DVector::zeros(dim);
        e[j] = 1.0;
        let image = boost_apply(a, b, &MinkVector::from_dvector(e));
        m.set_column(j, image.as_dvector());
    }
    m
}

/// The boost along `G<p,q>` carrying `p` to `q`.
pub fn boost_between(p: &KPoint, q: &KPoint) -> Result<LorentzMap> {
    p.ensure_same_dim(q)?;
    p.ensure(Region::K)?;
    q.ensure(Region::K)?;
    if p.same_point(q) {
        return Err(Error::CoincidentPoints);
    }
    let class = if p.n() == 2 {
        IsometryClass::Hyperbolic
    } else {
        IsometryClass::General
    };
    Ok(LorentzMap::with_class(
        boost_matrix(p.rep(), q.rep()),
        class,
    ))
}

/// Orthonormal frame `(p, e1, ..., en)` at an observer: the canonical frame
/// carried to `p` by the boost from the origin observer. Positively oriented.
pub fn frame_at(p: &KPoint) -> Vec<MinkVector> {
    let dim = p.rep().dim();
    let mut origin = DVector::zeros(dim);
    origin[0] = 1.0;
    let o = MinkVector::from_dvector(origin);
    (0..dim)
        .map(|j| {
            let mut e = DVector::zeros(dim);
            e[j] = 1.0;
            boost_apply(&o, p.rep(), &MinkVector::from_dvector(e))
        })
        .collect()
}

/// `x -> -x - 2 <x,m> m`: the symmetry fixing exactly `m` in K.
pub fn reflection_in_point(m: &KPoint) -> Result<LorentzMap> {
    m.ensure(Region::K)?;
    let p = m.rep().as_dvector();
    let dim = p.len();
    let eta = metric(dim - 1);
    let mat = -DMatrix::<f64>::identity(dim, dim) - (p * p.transpose() * &eta) * 2.0;
    let class = classify_matrix(&mat);
    Ok(LorentzMap::with_class(mat, class))
}

/// Reflection in the hyperplane `u^perp` for a spacelike `u`.
pub fn reflection_in_hyperplane(normal: &KPoint) -> Result<LorentzMap> {
    normal.ensure(Region::G)?;
    let u = normal.rep();
    let u = u.scale(1.0 / u.norm_sq().sqrt());
    let u = u.as_dvector();
    let dim = u.len();
    let eta = metric(dim - 1);
    let mat = DMatrix::<f64>::identity(dim, dim) - (u * u.transpose() * &eta) * 2.0;
    Ok(LorentzMap::with_class(mat, IsometryClass::Reflection))
}

/// Reflection fixing a geodesic pointwise (plane case).
pub fn reflection_in_geodesic(g: &ExtGeodesic) -> Result<LorentzMap> {
    require_plane(g.n())?;
    if g.signature() != Signature::MinusPlus {
        return Err(Error::WrongSignature(g.signature()));
    }
    reflection_in_hyperplane(&KPoint::new(pole(g)?)?)
}

/// Rotation by `theta` about an observer (plane case), positive from `e1`
/// toward `e2` in the frame of [`frame_at`].
pub fn elliptic_about(p: &KPoint, theta: f64) -> Result<LorentzMap> {
    require_plane(p.n())?;
    p.ensure(Region::K)?;
    let frame = frame_at(p);
    let e = DMatrix::from_columns(&[
        frame[0].as_dvector().clone(),
        frame[1].as_dvector().clone(),
        frame[2].as_dvector().clone(),
    ]);
    let (s, c) = theta.sin_cos();
    let rot = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c]);
    let eta = metric(2);
    let e_inv = &eta * e.transpose() * &eta;
    let mat = &e * rot * e_inv;
    let class = if theta.rem_euclid(2.0 * PI) == 0.0 {
        IsometryClass::Identity
    } else {
        IsometryClass::Elliptic
    };
    Ok(LorentzMap::with_class(mat, class))
}

/// One-parameter family of null rotations fixing the ideal point `f` (plane
/// case). With `f = (1, u)` and `e = (0, -u2, u1)`:
/// `P(s) x = x + s (<x,f> e - <x,e> f) - s^2/2 <x,f> f`.
pub fn parabolic_fixing(f: &KPoint, s: f64) -> Result<LorentzMap> {
    require_plane(f.n())?;
    f.ensure(Region::BoundaryK)?;
    let fv = f.rep().as_dvector().clone();
    let ev = DVector::from_vec(vec![0.0, -fv[2], fv[1]]);
    let eta = metric(2);
    let eta_f = &eta * &fv;
    let eta_e = &eta * &ev;
    let mat = DMatrix::<f64>::identity(3, 3)
        + (&ev * eta_f.transpose() - &fv * eta_e.transpose()) * s
        - (&fv * eta_f.transpose()) * (0.5 * s * s);
    let class = if s == 0.0 {
        IsometryClass::Identity
    } else {
        IsometryClass::Parabolic
    };
    Ok(LorentzMap::with_class(mat, class))
}

/// Signed hyperbolic area of a geodesic triangle.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct TriangleArea(f64);

impl TriangleArea {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Interior angle at `p` between the geodesics toward `q` and `r`.
fn interior_angle(p: &KPoint, q: &KPoint, r: &KPoint) -> f64 {
    let a = unit_tangent_part(p, q.rep());
    let b = unit_tangent_part(p, r.rep());
    let sin = det3(p.rep(), &a, &b).abs();
    let cos = a.form(&b);
    sin.atan2(cos)
}

/// Angle defect `pi - sum of interior angles`, signed by the orientation of
/// the vertex triple (`det[p1, p2, p3]` in the canonical basis).
pub fn oriented_area(p1: &KPoint, p2: &KPoint, p3: &KPoint) -> Result<TriangleArea> {
    require_plane(p1.n())?;
    p1.ensure_same_dim(p2)?;
    p1.ensure_same_dim(p3)?;
    for p in [p1, p2, p3] {
        p.ensure(Region::K)?;
    }
    if p1.same_point(p2) || p2.same_point(p3) || p1.same_point(p3) {
        return Ok(TriangleArea(0.0));
    }
    let sum = interior_angle(p1, p2, p3) + interior_angle(p2, p3, p1) + interior_angle(p3, p1, p2);
    let area = (PI - sum).max(0.0);
    if area < DEGENERATE_AREA {
        return Ok(TriangleArea(0.0));
    }
    let orientation = det3(p1.rep(), p2.rep(), p3.rep()).signum();
    Ok(TriangleArea(orientation * area))
}

/// The Wigner rotation of a triangle of observers.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerRotation {
    /// Rotation angle at `p3` in `(-pi, pi]`, positive from `e1` toward `e2`
    /// of [`frame_at`].
    pub angle: f64,
    /// `h2 h1 H^{-1}`, elliptic and fixing `p3`.
    pub map: LorentzMap,
}

/// `h2 h1 H^{-1}` for the boosts `h1: p1 -> p2`, `h2: p2 -> p3`, `H: p1 -> p3`.
pub fn wigner_rotation(p1: &KPoint, p2: &KPoint, p3: &KPoint) -> Result<WignerRotation> {
    let area = oriented_area(p1, p2, p3)?;
    if area.value() == 0.0 {
        return Ok(WignerRotation {
            angle: 0.0,
            map: LorentzMap::identity(2)?,
        });
    }
    let h1 = boost_between(p1, p2)?;
    let h2 = boost_between(p2, p3)?;
    let big = boost_between(p1, p3)?;
    let map = h2.compose(&h1)?.compose(&big.inverse())?;
    let map = LorentzMap::with_class(map.matrix, IsometryClass::Elliptic);

    // Carry e1 around the triangle one map at a time.
    let frame = frame_at(p3);
    let back = boost_apply(p3.rep(), p1.rep(), &frame[1]);
    let mid = boost_apply(p1.rep(), p2.rep(), &back);
    let image = boost_apply(p2.rep(), p3.rep(), &mid);
    let angle = image.form(&frame[2]).atan2(image.form(&frame[1]));
    let angle = if angle == -PI { PI } else { angle };
    Ok(WignerRotation { angle, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::{geodesic_through, midpoint, ExtGeodesic};
    use crate::kinematic::{distance, tance};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn k(c: &[f64]) -> KPoint {
        KPoint::from_coords(c).unwrap()
    }

    fn v(c: &[f64]) -> MinkVector {
        MinkVector::from_slice(c).unwrap()
    }

    #[test]
    fn x_boost() {
        let b = boost_between(&k(&[1., 0., 0.]), &k(&[SQRT2, 1., 0.])).unwrap();
        let expected = DMatrix::from_row_slice(3, 3, &[SQRT2, 1., 0., 1., SQRT2, 0., 0., 0., 1.]);
        assert_abs_diff_eq!(b.matrix(), &expected, epsilon = 1e-15);
        assert_eq!(classify_isometry(&b).unwrap(), IsometryClass::Hyperbolic);
        let back = boost_between(&k(&[SQRT2, 1., 0.]), &k(&[1., 0., 0.])).unwrap();
        assert_abs_diff_eq!(back.matrix(), b.inverse().matrix(), epsilon = 1e-15);
        assert_eq!(
            boost_between(&k(&[1., 0., 0.]), &k(&[1., 0., 0.])).unwrap_err(),
            Error::CoincidentPoints
        );
    }

    #[test]
    fn boost_eigenvectors_are_vertices() {
        let p = k(&[1., 0., 0.]);
        let q = k(&[2., 1., 1.]);
        let b = boost_between(&p, &q).unwrap();
        let d = distance(&p, &q).unwrap();
        let (f1, f2) = crate::geodesics::vertices(&geodesic_through(&p, &q).unwrap()).unwrap();
        let i1 = b.apply(f1.rep()).unwrap();
        let i2 = b.apply(f2.rep()).unwrap();
        let e1 = f1.rep().scale(d.exp());
        let e2 = f2.rep().scale((-d).exp());
        assert_abs_diff_eq!(i1.as_dvector(), e1.as_dvector(), epsilon = 1e-14);
        assert_abs_diff_eq!(i2.as_dvector(), e2.as_dvector(), epsilon = 1e-14);
    }

    #[test]
    fn reflections() {
        let p = k(&[1., 0., 0.]);
        let q = k(&[2., 1., 1.]);
        let m = midpoint(&p, &q).unwrap();
        let r = reflection_in_point(&m).unwrap();
        assert_abs_diff_eq!(
            r.compose(&r).unwrap().matrix(),
            &DMatrix::identity(3, 3),
            epsilon = 1e-13
        );
        assert!(r.apply_point(&p).unwrap().same_point(&q));
        assert_eq!(r.class(), IsometryClass::Elliptic);

        let g = ExtGeodesic::new(v(&[1., 0., 0.]), v(&[0., 1., 0.])).unwrap();
        let s = reflection_in_geodesic(&g).unwrap();
        assert_eq!(s.class(), IsometryClass::Reflection);
        let on = k(&[2., 1.5, 0.]);
        assert!(s.apply_point(&on).unwrap().same_point(&on));
        assert!(s
            .apply_point(&k(&[2., 0., 1.]))
            .unwrap()
            .same_point(&k(&[2., 0., -1.])));
    }

    #[test]
    fn two_perpendicular_reflections_make_a_boost() {
        // reflections in the geodesics orthogonal to the x axis through
        // the origin and through the point at distance d/2
        let half = 0.4f64;
        let r1 = reflection_in_hyperplane(&k(&[0., 1., 0.])).unwrap();
        let r2 = reflection_in_hyperplane(&k(&[half.sinh(), half.cosh(), 0.])).unwrap();
        let boost = boost_between(
            &k(&[1., 0., 0.]),
            &k(&[(2.0 * half).cosh(), (2.0 * half).sinh(), 0.]),
        )
        .unwrap();
        assert_abs_diff_eq!(
            r2.compose(&r1).unwrap().matrix(),
            boost.matrix(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn elliptic_and_parabolic() {
        let p = k(&[1., 0., 0.]);
        let e = elliptic_about(&p, 0.0).unwrap();
        assert_abs_diff_eq!(e.matrix(), &DMatrix::identity(3, 3), epsilon = 1e-15);
        let e = elliptic_about(&p, 1.0).unwrap();
        assert_eq!(classify_isometry(&e).unwrap(), IsometryClass::Elliptic);
        assert_abs_diff_eq!(e.matrix()[(1, 1)], 1.0f64.cos(), epsilon = 1e-15);
        assert_abs_diff_eq!(e.matrix()[(2, 1)], 1.0f64.sin(), epsilon = 1e-15);

        let c = k(&[2., 1., 0.5]);
        let q = k(&[1.5, -0.3, 1.0]);
        let base = tance(&c, &q).unwrap().value();
        for i in 0..16 {
            let th = i as f64 * PI / 8.0;
            let image = elliptic_about(&c, th).unwrap().apply_point(&q).unwrap();
            assert_abs_diff_eq!(
                tance(&c, &image).unwrap().value(),
                base,
                epsilon = 1e-12 * base
            );
        }

        let f = k(&[1., 0.6, 0.8]);
        assert_abs_diff_eq!(
            parabolic_fixing(&f, 0.0).unwrap().matrix(),
            &DMatrix::identity(3, 3)
        );
        let a = parabolic_fixing(&f, 0.7).unwrap();
        let b = parabolic_fixing(&f, -1.9).unwrap();
        let ab = parabolic_fixing(&f, 0.7 - 1.9).unwrap();
        assert_abs_diff_eq!(
            a.compose(&b).unwrap().matrix(),
            ab.matrix(),
            epsilon = 1e-14
        );
        assert_eq!(classify_isometry(&a).unwrap(), IsometryClass::Parabolic);
        assert_abs_diff_eq!(
            a.apply(f.rep()).unwrap().as_dvector(),
            f.rep().as_dvector(),
            epsilon = 1e-15
        );
        let x = k(&[3., 1., -2.]);
        let y = a.apply_point(&x).unwrap();
        assert_abs_diff_eq!(
            f.rep().form(y.rep()),
            f.rep().form(x.rep()),
            epsilon = 1e-13
        );
    }

    #[test]
    fn rejects_non_lorentz() {
        let m = DMatrix::from_diagonal_element(3, 3, 2.0);
        assert!(matches!(LorentzMap::new(m), Err(Error::NotLorentz(_))));
        let flip = DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, 1.0, 1.0]));
        assert!(matches!(
            LorentzMap::new(flip),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn wigner_collinear_and_equilateral() {
        let p1 = k(&[1., 0., 0.]);
        let p2 = k(&[SQRT2, 1., 0.]);
        let p3 = k(&[3., 2.0 * SQRT2, 0.]);
        let w = wigner_rotation(&p1, &p2, &p3).unwrap();
        assert_eq!(w.angle, 0.0);
        assert_eq!(w.map.class(), IsometryClass::Identity);

        // equilateral with side arccosh(sqrt 2) centered at the origin
        let side = SQRT2.acosh();
        let cos_alpha = (side.cosh() * side.cosh() - side.cosh()) / (side.sinh() * side.sinh());
        let alpha = cos_alpha.acos();
        let defect = PI - 3.0 * alpha;
        // circumradius R with cosh(side) = cosh^2 R - sinh^2 R cos(2 pi / 3)
        let r = ((side.cosh() - 1.0) / 1.5 + 1.0).sqrt().acosh();
        let vertex = |t: f64| crate::geodesics::circle_point(&p1, r, t).unwrap();
        let (a, b, c) = (vertex(0.0), vertex(2.0 * PI / 3.0), vertex(4.0 * PI / 3.0));
        assert_abs_diff_eq!(distance(&a, &b).unwrap(), side, epsilon = 1e-14);
        let area = oriented_area(&a, &b, &c).unwrap().value();
        assert_abs_diff_eq!(area, defect, epsilon = 1e-13);
        let w = wigner_rotation(&a, &b, &c).unwrap();
        assert_abs_diff_eq!(w.angle, -defect, epsilon = 1e-13);
        assert_eq!(classify_isometry(&w.map).unwrap(), IsometryClass::Elliptic);
        let swapped = wigner_rotation(&b, &a, &c).unwrap();
        assert_abs_diff_eq!(swapped.angle, defect, epsilon = 1e-13);
        assert!(w.map.apply_point(&c).unwrap().same_point(&c));
    }

    fn observer() -> impl Strategy<Value = KPoint> {
        (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y)| {
            let t = (1.0 + x * x + y * y).sqrt();
            k(&[t, x, y])
        })
    }

    proptest! {
        #[test]
        fn area_is_isometry_invariant(a in observer(), b in observer(), c in observer(), m in observer(), th in -3.0..3.0f64) {
            let area = oriented_area(&a, &b, &c).unwrap().value();
            prop_assume!(!m.same_point(&KPoint::origin(2).unwrap()));
            let map = boost_between(&KPoint::origin(2).unwrap(), &m).unwrap()
                .compose(&elliptic_about(&KPoint::origin(2).unwrap(), th).unwrap()).unwrap();
            let moved: Vec<_> = [&a, &b, &c].iter().map(|x| map.apply_point(x).unwrap()).collect();
            let image = oriented_area(&moved[0], &moved[1], &moved[2]).unwrap().value();
            prop_assert!((area - image).abs() <= 1e-9);
        }

        #[test]
        fn constructed_maps_are_lorentz(p in observer(), q in observer(), th in -3.0..3.0f64, s in -3.0..3.0f64) {
            prop_assume!(!p.same_point(&q));
            prop_assert!(boost_between(&p, &q).unwrap().defect() <= LORENTZ_DEFECT);
            prop_assert!(elliptic_about(&p, th).unwrap().defect() <= LORENTZ_DEFECT);
            prop_assert!(reflection_in_point(&p).unwrap().defect() <= LORENTZ_DEFECT);
            let f = KPoint::from_coords(&[1.0, th.cos(), th.sin()]).unwrap();
            prop_assert!(parabolic_fixing(&f, s).unwrap().defect() <= LORENTZ_DEFECT);
        }
    }
}

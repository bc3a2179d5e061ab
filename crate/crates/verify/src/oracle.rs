//! Reference computations that never call into `kinspace`. Everything here
//! works on raw coordinate vectors with the form written out by hand.

use nalgebra::{DMatrix, DVector};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

pub fn dot(a: &Vector, b: &Vector) -> f64 {
    -a[0] * b[0] + a.rows(1, a.len() - 1).dot(&b.rows(1, b.len() - 1))
}

pub fn eta(n: usize) -> Matrix {
    let mut m = Matrix::identity(n + 1, n + 1);
    m[(0, 0)] = -1.0;
    m
}

/// Unit future representative of a timelike vector.
pub fn unit_timelike(v: &Vector) -> Vector {
    let s = (-dot(v, v)).sqrt();
    if v[0] < 0.0 {
        -v / s
    } else {
        v / s
    }
}

pub fn unit_spacelike(v: &Vector) -> Vector {
    v / dot(v, v).sqrt()
}

/// `ta(a,b) = <a,b>^2 / (<a,a><b,b>)`.
pub fn tance(a: &Vector, b: &Vector) -> f64 {
    let ab = dot(a, b);
    ab * ab / (dot(a, a) * dot(b, b))
}

pub fn distance(p: &Vector, q: &Vector) -> f64 {
    let p = unit_timelike(p);
    let q = unit_timelike(q);
    (-dot(&p, &q)).max(1.0).acosh()
}

/// Orthonormal frame `[p, e1, ..., en]` at a timelike `p` by Gram-Schmidt on
/// the spatial coordinate axes, as the columns of a matrix.
pub fn frame(p: &Vector) -> Matrix {
    let dim = p.len();
    let p = unit_timelike(p);
    let mut cols = vec![p.clone()];
    for i in 1..dim {
        let mut v = Vector::zeros(dim);
        v[i] = 1.0;
        for (k, f) in cols.iter().enumerate() {
            let sign = if k == 0 { -1.0 } else { 1.0 };
            v -= f * (sign * dot(&v, f));
        }
        cols.push(unit_spacelike(&v));
    }
    Matrix::from_columns(&cols)
}

/// Coordinates of `x` in the frame at `p`, by LU solve.
pub fn frame_coords(p: &Vector, x: &Vector) -> Vector {
    frame(p).lu().solve(x).expect("frame is invertible")
}

/// Point reflection fixing the unit timelike `m`: `y -> -y - 2<y,m>m`.
pub fn point_reflection(m: &Vector) -> Matrix {
    let m = unit_timelike(m);
    let n = m.len();
    -Matrix::identity(n, n) - (&m * m.transpose() * eta(n - 1)) * 2.0
}

/// Reflection in the hyperplane orthogonal to a unit spacelike `u`.
pub fn hyperplane_reflection(u: &Vector) -> Matrix {
    let u = unit_spacelike(u);
    let n = u.len();
    Matrix::identity(n, n) - (&u * u.transpose() * eta(n - 1)) * 2.0
}

pub fn midpoint(p: &Vector, q: &Vector) -> Vector {
    unit_timelike(&(unit_timelike(p) + unit_timelike(q)))
}

/// The pure boost taking `p` to `q`, as the product of the point reflections
/// in `p` and in the midpoint.
pub fn boost(p: &Vector, q: &Vector) -> Matrix {
    point_reflection(&midpoint(p, q)) * point_reflection(p)
}

pub fn lorentz_inverse(m: &Matrix) -> Matrix {
    let e = eta(m.nrows() - 1);
    &e * m.transpose() * &e
}

/// `max |M^T eta M - eta|` relative to the largest squared entry.
pub fn lorentz_defect(m: &Matrix) -> f64 {
    let e = eta(m.nrows() - 1);
    let d = m.transpose() * &e * m - &e;
    let scale = m.amax().powi(2).max(1.0);
    d.amax() / scale
}

/// Unit tangent at `p` pointing toward `q`.
pub fn direction(p: &Vector, q: &Vector) -> Vector {
    let p = unit_timelike(p);
    let q = unit_timelike(q);
    let t = &q + &p * dot(&q, &p);
    unit_spacelike(&t)
}

/// Interior angle at `a` of the triangle `abc`, from the hyperbolic law of cosines.
pub fn angle(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    let (ab, ac, bc) = (distance(a, b), distance(a, c), distance(b, c));
    let cos = (ab.cosh() * ac.cosh() - bc.cosh()) / (ab.sinh() * ac.sinh());
    cos.clamp(-1.0, 1.0).acos()
}

pub fn det3(a: &Vector, b: &Vector, c: &Vector) -> f64 {
    Matrix::from_columns(&[a.clone(), b.clone(), c.clone()]).determinant()
}

/// Signed area `sign(det[p1,p2,p3]) (pi - sum of angles)` in the plane case.
pub fn oriented_area(p1: &Vector, p2: &Vector, p3: &Vector) -> f64 {
    let (p1, p2, p3) = (unit_timelike(p1), unit_timelike(p2), unit_timelike(p3));
    let defect =
        std::f64::consts::PI - angle(&p1, &p2, &p3) - angle(&p2, &p3, &p1) - angle(&p3, &p1, &p2);
    defect * det3(&p1, &p2, &p3).signum()
}

/// Rotation angle of a plane isometry fixing `p`, measured in a positively
/// oriented orthonormal basis of the tangent plane at `p`.
pub fn rotation_angle(m: &Matrix, p: &Vector) -> f64 {
    let f = frame(p);
    let p = f.column(0).into_owned();
    let e1 = f.column(1).into_owned();
    let mut e2 = f.column(2).into_owned();
    if det3(&p, &e1, &e2) < 0.0 {
        e2 = -e2;
    }
    let image = m * &e1;
    dot(&image, &e2).atan2(dot(&image, &e1))
}

/// Einstein addition `u (+) v` of spatial velocities in one frame, with the
/// spatial parts given as ordinary Euclidean vectors.
pub fn einstein_add(u: &Vector, v: &Vector, c: f64) -> Vector {
    let uv = u.dot(v) / (c * c);
    let gamma = 1.0 / (1.0 - u.norm_squared() / (c * c)).sqrt();
    let w = u + v / gamma + u * (gamma / (1.0 + gamma) * uv);
    w / (1.0 + uv)
}

pub fn einstein_collinear(a: f64, b: f64, c: f64) -> f64 {
    (a + b) / (1.0 + a * b / (c * c))
}

/// Second-order ODE `x'' = F(x, x')` by classical RK4 over `[0, t]`.
fn rk4_second_order(
    x0: &Vector,
    v0: &Vector,
    t: f64,
    steps: usize,
    accel: impl Fn(&Vector, &Vector) -> Vector,
) -> (Vector, Vector) {
    let h = t / steps as f64;
    let (mut x, mut v) = (x0.clone(), v0.clone());
    for _ in 0..steps {
        let a1 = accel(&x, &v);
        let (x2, v2) = (&x + &v * (0.5 * h), &v + &a1 * (0.5 * h));
        let a2 = accel(&x2, &v2);
        let (x3, v3) = (&x + &v2 * (0.5 * h), &v + &a2 * (0.5 * h));
        let a3 = accel(&x3, &v3);
        let (x4, v4) = (&x + &v3 * h, &v + &a3 * h);
        let a4 = accel(&x4, &v4);
        x += (&v + &v2 * 2.0 + &v3 * 2.0 + &v4) * (h / 6.0);
        v += (&a1 + &a2 * 2.0 + &a3 * 2.0 + &a4) * (h / 6.0);
    }
    (x, v)
}

/// Geodesic on the unit hyperboloid from `p` with initial velocity `w`, by
/// integrating `x'' = <x', x'> x` for unit time.
pub fn geodesic_ode(p: &Vector, w: &Vector, steps: usize) -> Vector {
    rk4_second_order(p, w, 1.0, steps, |x, v| x * dot(v, v)).0
}

/// Parallel transport of `v` along the geodesic from `p` to `q` by
/// integrating `V' = <V, gamma'> gamma` next to the geodesic ODE.
pub fn transport_ode(p: &Vector, q: &Vector, v: &Vector, steps: usize) -> Vector {
    let p = unit_timelike(p);
    let d = distance(&p, q);
    if d == 0.0 {
        return v.clone();
    }
    let dir = direction(&p, q);
    let dim = p.len();
    // state (gamma, V) with gamma'' = gamma and V' = <V, gamma'> gamma
    let h = d / steps as f64;
    let deriv = |g: &Vector, gd: &Vector, vv: &Vector| -> (Vector, Vector, Vector) {
        (gd.clone(), g.clone(), g * dot(vv, gd))
    };
    let (mut g, mut gd, mut vv) = (p.clone(), dir, v.clone());
    for _ in 0..steps {
        let k1 = deriv(&g, &gd, &vv);
        let s2 = (
            &g + &k1.0 * (0.5 * h),
            &gd + &k1.1 * (0.5 * h),
            &vv + &k1.2 * (0.5 * h),
        );
        let k2 = deriv(&s2.0, &s2.1, &s2.2);
        let s3 = (
            &g + &k2.0 * (0.5 * h),
            &gd + &k2.1 * (0.5 * h),
            &vv + &k2.2 * (0.5 * h),
        );
        let k3 = deriv(&s3.0, &s3.1, &s3.2);
        let s4 = (&g + &k3.0 * h, &gd + &k3.1 * h, &vv + &k3.2 * h);
        let k4 = deriv(&s4.0, &s4.1, &s4.2);
        g += (&k1.0 + &k2.0 * 2.0 + &k3.0 * 2.0 + &k4.0) * (h / 6.0);
        gd += (&k1.1 + &k2.1 * 2.0 + &k3.1 * 2.0 + &k4.1) * (h / 6.0);
        vv += (&k1.2 + &k2.2 * 2.0 + &k3.2 * 2.0 + &k4.2) * (h / 6.0);
    }
    debug_assert_eq!(vv.len(), dim);
    vv
}

/// `d(p, r(T)) - d(q, r(T))` for the unit-speed ray `r` from `o` toward the
/// ideal point `o + e`.
pub fn busemann_limit(o: &Vector, e: &Vector, p: &Vector, q: &Vector, t: f64) -> f64 {
    // r(T) is unit by construction; renormalizing it would cancel away every
    // digit of <r, r> at large T
    let r = o * t.cosh() + e * t.sinh();
    let far = |x: &Vector| (-dot(&unit_timelike(x), &r)).max(1.0).acosh();
    far(p) - far(q)
}

/// `(t_p, t_q)`: time coordinates of the event `u` in the frames of `p` and `q`.
pub fn event_times(p: &Vector, q: &Vector, u: &Vector) -> (f64, f64) {
    (frame_coords(p, u)[0], frame_coords(q, u)[0])
}

/// Closed-form hyperbolic motion along the first spatial axis.
pub fn hyperbolic_position(n: usize, a: f64, c: f64, tau: f64) -> Vector {
    let mut x = Vector::zeros(n + 1);
    let r = a * tau / c;
    x[0] = c * c / a * r.sinh();
    x[1] = c * c / a * (r.cosh() - 1.0);
    x
}

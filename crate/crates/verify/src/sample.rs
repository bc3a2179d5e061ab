//! Seeded random inputs. Each sample index gets its own ChaCha stream so the
//! suites are reproducible regardless of how rayon schedules the work.

use crate::oracle::{dot, unit_timelike, Matrix, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng_for(seed: u64, suite: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ suite.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    rng.set_stream(index);
    rng
}

pub fn unit_sphere(rng: &mut impl Rng, n: usize) -> Vector {
    loop {
        let v = Vector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let len = v.norm();
        if len > 1e-6 {
            return v / len;
        }
    }
}

fn with_time(t: f64, spatial: Vector) -> Vector {
    let mut v = Vector::zeros(spatial.len() + 1);
    v[0] = t;
    v.rows_mut(1, spatial.len()).copy_from(&spatial);
    v
}

/// A unit future timelike vector at rapidity up to `max_rapidity` from the origin.
pub fn observer(rng: &mut impl Rng, n: usize, max_rapidity: f64) -> Vector {
    let r = rng.random_range(0.0..max_rapidity);
    with_time(r.cosh(), unit_sphere(rng, n) * r.sinh())
}

/// A future lightlike vector `(1, s)`.
pub fn lightlike(rng: &mut impl Rng, n: usize) -> Vector {
    with_time(1.0, unit_sphere(rng, n))
}

/// A unit spacelike vector `(sinh r, cosh r s)`.
pub fn spacelike(rng: &mut impl Rng, n: usize, max_rapidity: f64) -> Vector {
    let r = rng.random_range(-max_rapidity..max_rapidity);
    with_time(r.sinh(), unit_sphere(rng, n) * r.cosh())
}

/// A tangent vector at the unit timelike `p` with Euclidean-in-`p^perp`
/// length exactly `len`.
pub fn tangent(rng: &mut impl Rng, p: &Vector, len: f64) -> Vector {
    loop {
        let v = Vector::from_fn(p.len(), |_, _| rng.sample::<f64, _>(StandardNormal));
        let t = &v + p * dot(&v, p);
        let norm = dot(&t, &t).sqrt();
        if norm > 1e-3 {
            return t * (len / norm);
        }
    }
}

/// A nonzero multiplier for representative-independence checks.
pub fn rescale(rng: &mut impl Rng) -> f64 {
    let m = 10f64.powf(rng.random_range(-3.0..3.0));
    if rng.random_bool(0.5) {
        m
    } else {
        -m
    }
}

pub fn dimension(rng: &mut impl Rng) -> usize {
    if rng.random_bool(0.1) {
        rng.random_range(6..=16)
    } else {
        rng.random_range(2..=5)
    }
}

/// A random orthochronous Lorentz matrix: a boost of rapidity below
/// `max_rapidity` after a random spatial rotation.
pub fn lorentz(rng: &mut impl Rng, n: usize, max_rapidity: f64) -> Matrix {
    let g = Matrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let q = g.qr().q();
    let mut rot = Matrix::identity(n + 1, n + 1);
    rot.view_mut((1, 1), (n, n)).copy_from(&q);
    let o = with_time(1.0, Vector::zeros(n));
    let target = observer(rng, n, max_rapidity);
    crate::oracle::boost(&o, &unit_timelike(&target)) * rot
}

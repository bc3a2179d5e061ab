//! Minkowski space `M^{n+1}` in the canonical basis, where the form reads
//! `<u,v> = -u0 v0 + u1 v1 + ... + un vn`.

use std::ops::{Add, Index, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tolerance::EPS_CLASS;

/// Smallest supported number of spatial dimensions.
pub const MIN_N: usize = 2;
/// Largest supported number of spatial dimensions.
pub const MAX_N: usize = 16;

/// A vector of `M^{n+1}`. Coordinate 0 is the time axis.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkVector(DVector<f64>);

impl MinkVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let n = coords.len().saturating_sub(1);
        if !(MIN_N..=MAX_N).contains(&n) || coords.is_empty() {
            return Err(Error::UnsupportedDimension(n));
        }
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self(DVector::from_vec(coords)))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0.0; n + 1])
    }

    /// The `i`-th canonical basis vector of `M^{n+1}`.
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        if i > n {
            return Err(Error::InvalidArgument(format!(
                "basis index {i} out of range for n = {n}"
            )));
        }
        let mut coords = vec![0.0; n + 1];
        coords[i] = 1.0;
        Self::new(coords)
    }

    pub(crate) fn from_dvector(v: DVector<f64>) -> Self {
        debug_assert!((MIN_N + 1..=MAX_N + 1).contains(&v.len()));
        Self(v)
    }

    pub fn coords(&self) -> &[f64] {
        self.0.as_slice()
    }

    pub fn as_dvector(&self) -> &DVector<f64> {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0.data.into()
    }

    /// Number of coordinates, `n + 1`.
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Number of spatial dimensions.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> &[f64] {
        &self.0.as_slice()[1..]
    }

    /// The Minkowski form. Panics if the dimensions differ; use [`inner`] for a
    /// checked version.
    pub fn form(&self, other: &MinkVector) -> f64 {
        assert_eq!(
            self.dim(),
            other.dim(),
            "Minkowski form: dimension mismatch"
        );
        let a = self.0.as_slice();
        let b = other.0.as_slice();
        let spatial: f64 = a[1..].iter().zip(&b[1..]).map(|(x, y)| x * y).sum();
        spatial - a[0] * b[0]
    }

    /// `<v, v>`.
    pub fn norm_sq(&self) -> f64 {
        self.form(self)
    }

    pub fn euclidean_norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0.0)
    }

    pub fn scale(&self, s: f64) -> MinkVector {
        MinkVector(&self.0 * s)
    }

    /// Rescaled to unit Euclidean norm. The zero vector is returned unchanged.
    pub fn euclidean_normalized(&self) -> MinkVector {
        let norm = self.euclidean_norm();
        if norm == 0.0 {
            self.clone()
        } else {
            self.scale(1.0 / norm)
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &MinkVector) -> MinkVector {
        MinkVector(&self.0 + &other.0 * s)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    pub(crate) fn ensure_same_dim(&self, other: &MinkVector) -> Result<()> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }
}

impl Index<usize> for MinkVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &MinkVector {
    type Output = MinkVector;

    fn add(self, rhs: &MinkVector) -> MinkVector {
        MinkVector(&self.0 + &rhs.0)
    }
}

impl Sub for &MinkVector {
    type Output = MinkVector;

    fn sub(self, rhs: &MinkVector) -> MinkVector {
        MinkVector(&self.0 - &rhs.0)
    }
}

impl Neg for &MinkVector {
    type Output = MinkVector;

    fn neg(self) -> MinkVector {
        MinkVector(-&self.0)
    }
}

impl Mul<f64> for &MinkVector {
    type Output = MinkVector;

    fn mul(self, rhs: f64) -> MinkVector {
        self.scale(rhs)
    }
}

/// The Minkowski metric `diag(-1, 1, ..., 1)` for `n` spatial dimensions.
pub fn metric(n: usize) -> DMatrix<f64> {
    let mut eta = DMatrix::identity(n + 1, n + 1);
    eta[(0, 0)] = -1.0;
    eta
}

/// `<u, v>`, checking that the dimensions agree.
pub fn inner(u: &MinkVector, v: &MinkVector) -> Result<f64> {
    u.ensure_same_dim(v)?;
    Ok(u.form(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausalTag {
    Timelike,
    Spacelike,
    Lightlike,
    Zero,
}

/// Time orientation; only timelike and lightlike vectors carry one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Future,
    Past,
    Unoriented,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CausalClass {
    pub tag: CausalTag,
    pub orientation: Orientation,
}

/// Causal character of `v`, with `eps` a tolerance relative to the squared
/// Euclidean norm. The future cone is the sheet with positive time coordinate.
pub fn classify(v: &MinkVector, eps: f64) -> CausalClass {
    let euclid = v.0.norm_squared();
    if euclid == 0.0 {
        return CausalClass {
            tag: CausalTag::Zero,
            orientation: Orientation::Unoriented,
        };
    }
    let q = v.norm_sq();
    let tag = if q < -eps * euclid {
        CausalTag::Timelike
    } else if q > eps * euclid {
        CausalTag::Spacelike
    } else {
        CausalTag::Lightlike
    };
    let orientation = match tag {
        CausalTag::Timelike | CausalTag::Lightlike if v.time() > 0.0 => Orientation::Future,
        CausalTag::Timelike | CausalTag::Lightlike => Orientation::Past,
        _ => Orientation::Unoriented,
    };
    CausalClass { tag, orientation }
}

/// Decomposition `v = tangential + normal` with `tangential` in `p^perp`
/// and `normal` on the line `R p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub tangential: MinkVector,
    pub normal: MinkVector,
}

pub(crate) fn is_isotropic(p: &MinkVector) -> bool {
    p.norm_sq().abs() <= EPS_CLASS * p.0.norm_squared()
}

/// Orthogonal projectors onto `p^perp` and `R p`.
pub fn project(p: &MinkVector, v: &MinkVector) -> Result<Projection> {
    p.ensure_same_dim(v)?;
    if p.is_zero() {
        return Err(Error::ZeroVector);
    }
    if is_isotropic(p) {
        return Err(Error::Isotropic);
    }
    let normal = p.scale(v.form(p) / p.norm_sq());
    let tangential = v - &normal;
    Ok(Projection { tangential, normal })
}

/// Symmetric matrix of pairwise form values.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix(DMatrix<f64>);

impl GramMatrix {
    pub fn entries(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }
}

pub fn gram(vectors: &[MinkVector]) -> Result<GramMatrix> {
    let first = vectors
        .first()
        .ok_or_else(|| Error::InvalidArgument("gram matrix of an empty list".into()))?;
    for v in vectors {
        first.ensure_same_dim(v)?;
    }
    if vectors.len() > first.dim() {
        return Err(Error::LinearlyDependent);
    }
    let k = vectors.len();
    let m = DMatrix::from_fn(k, k, |i, j| vectors[i].form(&vectors[j]));
    Ok(GramMatrix(m))
}

// Residuals whose |<r,r>| / |r|^2 is at least this are used as pivots in input order.
const GOOD_PIVOT: f64 = 0.1;
// Below this the pair-sum pivot is tried.
const WEAK_PIVOT: f64 = 1e-2;
const DEPENDENT: f64 = 1e-10;

struct Residual {
    vec: DVector<f64>,
    scale: f64,
}

fn relative_norm(r: &DVector<f64>) -> f64 {
    let v = MinkVector(r.clone());
    v.norm_sq().abs() / r.norm_squared()
}

fn form_dv(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    a.dot(b) - 2.0 * a[0] * b[0]
}

fn remove_component(r: &mut DVector<f64>, e: &MinkVector) {
    // <e,e> = +-1 for the orthonormal vectors produced here.
    let ee = e.norm_sq().signum();
    let c = form_dv(r, &e.0) * ee;
    *r -= &e.0 * c;
}

fn pivoted_gram_schmidt(
    basis: &mut Vec<MinkVector>,
    mut residuals: Vec<Residual>,
    wanted: usize,
    drop_dependent: bool,
) -> Result<Vec<MinkVector>> {
    let mut produced = Vec::new();
    while produced.len() < wanted {
        for r in residuals.iter_mut() {
            for e in basis.iter() {
                remove_component(&mut r.vec, e);
            }
        }
        if drop_dependent {
            residuals.retain(|r| r.vec.norm() > DEPENDENT * r.scale);
        } else if residuals
            .iter()
            .any(|r| r.vec.norm() <= DEPENDENT * r.scale)
        {
            return Err(Error::LinearlyDependent);
        }
        if residuals.is_empty() {
            return Err(Error::LinearlyDependent);
        }

        let rels: Vec<f64> = residuals.iter().map(|r| relative_norm(&r.vec)).collect();
        let pick = rels.iter().position(|&q| q >= GOOD_PIVOT);
        let (index, mut rel) =
            match pick {
                Some(i) => (i, rels[i]),
                None => {
                    let (i, q) = rels.iter().copied().enumerate().fold(
                        (0, f64::NEG_INFINITY),
                        |acc, (i, q)| if q > acc.1 { (i, q) } else { acc },
                    );
                    (i, q)
                }
            };
        let mut index = index;
        if rel < WEAK_PIVOT && residuals.len() >= 2 {
            // Two isotropic residuals with a non-zero mutual form combine into a
            // non-isotropic one.
            let mut best: Option<(usize, DVector<f64>, f64)> = None;
            for i in 0..residuals.len() {
                for j in 0..residuals.len() {
                    if i == j {
                        continue;
                    }
                    for sign in [1.0, -1.0] {
                        let combo = &residuals[i].vec + &residuals[j].vec * sign;
                        if combo.norm() <= DEPENDENT * (residuals[i].scale + residuals[j].scale) {
                            continue;
                        }
                        let q = relative_norm(&combo);
                        if best.as_ref().map_or(true, |b| q > b.2) {
                            best = Some((i, combo, q));
                        }
                    }
                }
            }
            if let Some((i, combo, q)) = best {
                if q > rel {
                    let scale = residuals[i].scale * 2.0;
                    residuals[i] = Residual { vec: combo, scale };
                    index = i;
                    rel = q;
                }
            }
        }
        if rel <= EPS_CLASS {
            return Err(Error::DegenerateForm);
        }
        let mut pivot = residuals.remove(index).vec;
        for e in basis.iter() {
            remove_component(&mut pivot, e);
        }
        let q = MinkVector(pivot.clone()).norm_sq();
        if q.abs() <= EPS_CLASS * pivot.norm_squared() {
            return Err(Error::DegenerateForm);
        }
        let e = MinkVector(pivot / q.abs().sqrt());
        basis.push(e.clone());
        produced.push(e);
    }
    Ok(produced)
}

/// Gram-Schmidt adapted to the indefinite form.
///
/// The output spans the same subspace and has Gram matrix `diag(+-1)`. Isotropic
/// inputs are handled by pivoting, so a non-degenerate span is accepted even
/// when every input vector is lightlike. The output follows input order except
/// where a pivot had to be chosen.
pub fn orthonormalize(vectors: &[MinkVector]) -> Result<Vec<MinkVector>> {
    let first = vectors
        .first()
        .ok_or_else(|| Error::InvalidArgument("orthonormalize: empty list".into()))?;
    for v in vectors {
        first.ensure_same_dim(v)?;
        if v.is_zero() {
            return Err(Error::LinearlyDependent);
        }
    }
    if vectors.len() > first.dim() {
        return Err(Error::LinearlyDependent);
    }
    let residuals = vectors
        .iter()
        .map(|v| Residual {
            vec: v.0.clone(),
            scale: v.euclidean_norm(),
        })
        .collect();
    let mut basis = Vec::new();
    pivoted_gram_schmidt(&mut basis, residuals, vectors.len(), false)
}

/// Orthonormal basis of `span(vectors)^perp`.
pub fn orthogonal_complement(vectors: &[MinkVector]) -> Result<Vec<MinkVector>> {
    let mut basis = orthonormalize(vectors)?;
    let dim = basis[0].dim();
    let wanted = dim - basis.len();
    if wanted == 0 {
        return Ok(Vec::new());
    }
    let candidates = (0..dim)
        .map(|i| {
            let mut e = DVector::zeros(dim);
            e[i] = 1.0;
            Residual { vec: e, scale: 1.0 }
        })
        .collect();
    pivoted_gram_schmidt(&mut basis, candidates, wanted, true)
}

//! Doppler ratios of photons as Busemann functions on kinematic space.

use crate::error::{Error, Region, Result};
use crate::kinematic::KPoint;
use crate::minkowski::{classify, CausalTag, MinkVector, Orientation};
use crate::tolerance::EPS_CLASS;

/// A photon: a future lightlike momentum. Only frequency ratios are
/// exposed, so the overall scale of the momentum never matters.
#[derive(Debug, Clone, PartialEq)]
pub struct Photon {
    momentum: MinkVector,
    ideal: KPoint,
}

impl Photon {
    pub fn new(momentum: MinkVector) -> Result<Self> {
        let class = classify(&momentum, EPS_CLASS);
        if class.tag != CausalTag::Lightlike {
            let found = match class.tag {
                CausalTag::Timelike => Region::K,
                CausalTag::Zero => return Err(Error::ZeroVector),
                _ => Region::G,
            };
            return Err(Error::Region {
                expected: "the boundary of K",
                found,
            });
        }
        if class.orientation != Orientation::Future {
            return Err(Error::InvalidArgument(
                "photon momentum must be future oriented".into(),
            ));
        }
        let ideal = KPoint::on_boundary(momentum.clone())?;
        Ok(Self { momentum, ideal })
    }

    pub fn from_ideal(ideal: &KPoint) -> Result<Self> {
        ideal.ensure(Region::BoundaryK)?;
        Self::new(ideal.rep().clone())
    }

    pub fn momentum(&self) -> &MinkVector {
        &self.momentum
    }

    pub fn ideal(&self) -> &KPoint {
        &self.ideal
    }
}

fn check(f: &Photon, p: &KPoint, q: &KPoint) -> Result<()> {
    f.ideal.ensure_same_dim(p)?;
    p.ensure_same_dim(q)?;
    p.ensure(Region::K)?;
    q.ensure(Region::K)
}

/// `b_f(p,q) = ln(<f,p>/<f,q>)` on unit representatives.
pub fn busemann(f: &Photon, p: &KPoint, q: &KPoint) -> Result<f64> {
    Ok(frequency_ratio(f, p, q)?.ln())
}

/// `nu_p / nu_q = e^{b_f(p,q)}`.
pub fn frequency_ratio(f: &Photon, p: &KPoint, q: &KPoint) -> Result<f64> {
    check(f, p, q)?;
    let fp = f.ideal.rep().form(p.rep());
    let fq = f.ideal.rep().form(q.rep());
    Ok(fp / fq)
}

/// The energy ratio `E_p / E_q` from projecting the photon momentum on
/// arbitrary representatives: `(E_p/E_q)^2 = <f,p>^2 <q,q> / (<f,q>^2 <p,p>)`.
pub fn energy_ratio(f: &MinkVector, p: &MinkVector, q: &MinkVector) -> Result<f64> {
    f.ensure_same_dim(p)?;
    f.ensure_same_dim(q)?;
    let fp = f.form(p);
    let fq = f.form(q);
    let pp = p.norm_sq();
    let qq = q.norm_sq();
    if !(pp < 0.0 && qq < 0.0) {
        let offending = if pp < 0.0 { qq } else { pp };
        return Err(Error::Region {
            expected: "K",
            found: if offending == 0.0 {
                Region::BoundaryK
            } else {
                Region::G
            },
        });
    }
    if fq == 0.0 {
        return Err(Error::Isotropic);
    }
    Ok((fp * fp * qq / (fq * fq * pp)).sqrt())
}

/// Whether two observers measure the same frequency for the photon.
pub fn same_frequency(f: &Photon, p: &KPoint, q: &KPoint, eps: f64) -> Result<bool> {
    Ok((frequency_ratio(f, p, q)? - 1.0).abs() <= eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesics::{exp_map, horocycle_through, Scale, TangentVec};
    use crate::isometry::parabolic_fixing;
    use crate::kinematic::distance;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn k(c: &[f64]) -> KPoint {
        KPoint::from_coords(c).unwrap()
    }

    fn photon(c: &[f64]) -> Photon {
        Photon::new(MinkVector::from_slice(c).unwrap()).unwrap()
    }

    #[test]
    fn collinear_doppler() {
        let f = photon(&[1., 1., 0.]);
        let p = k(&[1., 0., 0.]);
        // relative speed 0.6 c
        let q = k(&[1.25, 0.75, 0.]);
        assert_abs_diff_eq!(frequency_ratio(&f, &p, &q).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            busemann(&f, &p, &q).unwrap(),
            distance(&p, &q).unwrap(),
            epsilon = 1e-15
        );
        let other = photon(&[1., -1., 0.]);
        assert_abs_diff_eq!(
            frequency_ratio(&other, &p, &q).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        assert_eq!(busemann(&f, &p, &p).unwrap(), 0.0);
        assert_eq!(frequency_ratio(&f, &q, &q).unwrap(), 1.0);
    }

    #[test]
    fn energy_ratio_matches_closed_form() {
        let f = photon(&[2., 0., -2.]);
        let p = k(&[3., 1., 2.]);
        let q = k(&[1.5, -1., 0.2]);
        let closed = frequency_ratio(&f, &p, &q).unwrap();
        let raw = energy_ratio(f.momentum(), &p.rep().scale(7.0), &q.rep().scale(0.1)).unwrap();
        assert_abs_diff_eq!(closed, raw, epsilon = 1e-14);
    }

    #[test]
    fn horocycles_are_level_sets() {
        let f = photon(&[1., 0.6, 0.8]);
        let p = k(&[2., 1., -1.]);
        let h = horocycle_through(f.ideal(), &p).unwrap();
        for s in [-3.0, -0.5, 0.0, 1.0, 4.0] {
            let q = parabolic_fixing(f.ideal(), s)
                .unwrap()
                .apply_point(&p)
                .unwrap();
            assert!(same_frequency(&f, &p, &q, 1e-12).unwrap());
            assert!(h.contains(&q, 1e-12));
        }
        // moving toward the source lowers the ratio by e^{-t}
        let o = k(&[1., 0., 0.]);
        let toward = exp_map(
            &TangentVec::new(
                o.clone(),
                MinkVector::from_slice(&[0., 0.6, 0.8]).unwrap(),
                Scale::Unit,
            )
            .unwrap(),
        );
        let r = frequency_ratio(&f, &toward, &o).unwrap();
        assert_abs_diff_eq!(r, (-1.0f64).exp(), epsilon = 1e-15);
        assert!(!same_frequency(&f, &o, &toward, 1e-9).unwrap());
    }

    #[test]
    fn photon_validation() {
        assert!(Photon::new(MinkVector::from_slice(&[-1., 1., 0.]).unwrap()).is_err());
        assert!(Photon::new(MinkVector::from_slice(&[1., 0., 0.]).unwrap()).is_err());
    }

    fn observer() -> impl Strategy<Value = KPoint> {
        (-3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y)| {
            let t = (1.0 + x * x + y * y).sqrt();
            k(&[t, x, y])
        })
    }

    proptest! {
        #[test]
        fn cocycle(a in -3.2..3.2f64, p in observer(), q in observer(), r in observer()) {
            let f = photon(&[1.0, a.cos(), a.sin()]);
            let lhs = busemann(&f, &p, &q).unwrap() + busemann(&f, &q, &r).unwrap();
            let rhs = busemann(&f, &p, &r).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
        }
    }
}

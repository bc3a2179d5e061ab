//! Cross-validation of `kinspace` against independent oracles.
//!
//! Each suite draws seeded random inputs, evaluates the library and a
//! reference computation from [`oracle`], and records the worst discrepancy
//! per check together with the tolerance it must meet.

use std::fmt;

use kinspace::{KPoint, MinkVector};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub mod oracle;
pub mod sample;

mod doppler;
mod dynamics;
mod geometry;
mod kinematic;
mod velocity;
mod wigner;

use oracle::Vector;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub samples: usize,
    pub worst: f64,
    pub tolerance: f64,
    /// `worst` is a lower bound that must be reached instead of a maximum
    /// error.
    pub at_least: bool,
}

impl Check {
    pub fn new(label: impl Into<String>, samples: usize, worst: f64, tolerance: f64) -> Self {
        Self {
            label: label.into(),
            samples,
            worst,
            tolerance,
            at_least: false,
        }
    }

    pub fn at_least(label: impl Into<String>, samples: usize, value: f64, bound: f64) -> Self {
        Self {
            at_least: true,
            ..Self::new(label, samples, value, bound)
        }
    }

    /// A yes/no check over all samples; `worst` is 1 when any sample failed.
    pub fn all(label: impl Into<String>, samples: usize, any_failed: bool) -> Self {
        Self::new(label, samples, any_failed as u8 as f64, 0.0)
    }

    pub fn passed(&self) -> bool {
        if self.at_least {
            self.worst >= self.tolerance
        } else {
            self.worst <= self.tolerance
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "ok  " } else { "FAIL" };
        if self.at_least {
            write!(
                f,
                "{status} {} (n = {}, observed {:.3}, required {:.3})",
                self.label, self.samples, self.worst, self.tolerance
            )
        } else {
            write!(
                f,
                "{status} {} (n = {}, worst {:.3e}, tol {:.1e})",
                self.label, self.samples, self.worst, self.tolerance
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub id: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(Check::passed)
    }

    /// One line: `criterion N: PASS title`.
    pub fn summary(&self) -> String {
        let failed: Vec<&str> = self
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.label.as_str())
            .collect();
        if failed.is_empty() {
            format!("criterion {}: PASS {}", self.id, self.title)
        } else {
            format!(
                "criterion {}: FAIL {} [{}]",
                self.id,
                self.title,
                failed.join("; ")
            )
        }
    }
}

pub const SUITES: [(u32, &str); 9] = [
    (1, "tance and Lorentz factor"),
    (2, "time dilation"),
    (3, "length contraction"),
    (4, "velocity addition"),
    (5, "Wigner rotation"),
    (6, "Doppler and Busemann"),
    (7, "causality invariant"),
    (8, "proper-time dynamics"),
    (9, "geometry core"),
];

pub fn run(id: u32, seed: u64) -> Option<Report> {
    let checks = match id {
        1 => kinematic::tance_gamma(seed),
        2 => kinematic::dilation(seed),
        3 => kinematic::contraction(seed),
        4 => velocity::addition(seed),
        5 => wigner::rotation(seed),
        6 => doppler::doppler(seed),
        7 => kinematic::causality(seed),
        8 => dynamics::dynamics(seed),
        9 => geometry::core(seed),
        _ => return None,
    };
    let title = SUITES.iter().find(|(i, _)| *i == id)?.1;
    Some(Report { id, title, checks })
}

pub fn run_all(seed: u64) -> Vec<Report> {
    SUITES.iter().filter_map(|&(id, _)| run(id, seed)).collect()
}

/// Evaluates `f` on `count` independently seeded samples in parallel and
/// returns the elementwise maximum. NaN counts as infinitely bad.
pub(crate) fn sweep<const K: usize>(
    seed: u64,
    suite: u64,
    count: usize,
    f: impl Fn(&mut ChaCha8Rng) -> [f64; K] + Sync,
) -> [f64; K] {
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample::rng_for(seed, suite, i);
            f(&mut rng).map(|x| if x.is_nan() { f64::INFINITY } else { x.abs() })
        })
        .reduce(|| [0.0; K], |a, b| std::array::from_fn(|k| a[k].max(b[k])))
}

pub(crate) fn mink(v: &Vector) -> MinkVector {
    MinkVector::from_slice(v.as_slice()).expect("valid sample vector")
}

pub(crate) fn point(v: &Vector) -> KPoint {
    KPoint::new(mink(v)).expect("valid sample point")
}

pub(crate) fn raw(v: &MinkVector) -> Vector {
    Vector::from_column_slice(v.coords())
}

pub(crate) fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

/// Distance between two ratios `a0 : a1` and `b0 : b1` as the normalized 2x2 minor.
pub(crate) fn ratio_gap(a: (f64, f64), b: (f64, f64)) -> f64 {
    let na = a.0.hypot(a.1);
    let nb = b.0.hypot(b.1);
    (a.0 * b.1 - a.1 * b.0).abs() / (na * nb)
}

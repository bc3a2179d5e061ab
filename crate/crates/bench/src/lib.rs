//! Fixed inputs shared by the benchmarks.

use kinspace::{KPoint, MinkVector};

/// Observer with velocity `v` relative to the origin (c = 1), in dimension `v.len()`.
pub fn observer(v: &[f64]) -> KPoint {
    let coords: Vec<f64> = std::iter::once(1.0).chain(v.iter().copied()).collect();
    KPoint::from_coords(&coords).expect("speed below 1")
}

/// Spacelike event `(0, x)`.
pub fn event(x: &[f64]) -> MinkVector {
    let coords: Vec<f64> = std::iter::once(0.0).chain(x.iter().copied()).collect();
    MinkVector::from_slice(&coords).expect("valid dimension")
}

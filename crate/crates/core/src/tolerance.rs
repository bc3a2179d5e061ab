//! Numeric thresholds shared across the crate.

/// Relative tolerance for causal classification: `|<v,v>| <= EPS_CLASS * |v|^2`
/// (Euclidean norm) counts as lightlike.
pub const EPS_CLASS: f64 = 1e-9;

/// Tance values in `[1 - TANCE_CLAMP, 1]` are treated as exactly 1.
pub const TANCE_CLAMP: f64 = 1e-9;

/// `|eta| <= ETA_BOUNDARY` is reported as the simultaneity boundary.
pub const ETA_BOUNDARY: f64 = 1e-12;

/// Parabolic band for the trace of an `SO+(1,2)` element: `|tr - 3| <= PARABOLIC_TRACE`.
pub const PARABOLIC_TRACE: f64 = 1e-8;

/// Triangles with `|area|` below this are treated as degenerate.
pub const DEGENERATE_AREA: f64 = 1e-10;

/// Relative tolerance on `<xi', xi'> = -c^2` for user supplied worldlines.
pub const EPS_DYN: f64 = 1e-8;

/// Velocities with `|v| >= c (1 - LIGHT_SPEED_BAND)` have no finite rapidity.
pub const LIGHT_SPEED_BAND: f64 = 1e-12;

/// Entrywise defect allowed for `M^T eta M = eta`, scaled by `max(1, |M|_max^2)`.
pub const LORENTZ_DEFECT: f64 = 1e-10;

/// A single integration step may not move the state further than this rapidity.
pub const BLOW_UP_RAPIDITY: f64 = 1e3;

//! Hyperbolic kinematic space: the projectivized Minkowski space of observer
//! four-velocities, with its Cayley-Klein geometry, isometries, velocity
//! composition, Doppler ratios and proper-time dynamics.

pub mod doppler;
pub mod dynamics;
pub mod error;
pub mod geodesics;
pub mod isometry;
pub mod kinematic;
pub mod minkowski;
pub mod tolerance;
pub mod velocity;

pub use doppler::{busemann, energy_ratio, frequency_ratio, same_frequency, Photon};
pub use dynamics::{
    acceleration, hyperbolic_motion, integrate_force, kcurve_to_worldline, worldline_to_kcurve,
    CircularField, ConstantField, FnField, ForceField, KCurve, Worldline, WorldlineSample,
    ZeroField,
};
pub use error::{Error, Region, Result};
pub use geodesics::{
    along, circle_point, exp_map, geodesic_through, horocycle_through, hypercycle_intersect,
    log_map, midpoint, parallel_transport, polar, polar_geodesic, polar_point, pole,
    signed_distance, vertices, ExtGeodesic, Horocycle, Hypercycle, Scale, Signature, TangentVec,
};
pub use isometry::{
    boost_between, classify_isometry, elliptic_about, frame_at, lorentz_defect, oriented_area,
    parabolic_fixing, reflection_in_geodesic, reflection_in_hyperplane, reflection_in_point,
    wigner_rotation, IsometryClass, LorentzMap, TriangleArea, WignerRotation,
};
pub use kinematic::{
    causality_verdict, distance, eta, length_contraction, lorentz_factor, scalar_velocity, tance,
    time_dilation, KPoint, ProjectiveRatio, Tance, Verdict,
};
pub use minkowski::{
    classify, gram, inner, metric, orthogonal_complement, orthonormalize, project, CausalClass,
    CausalTag, GramMatrix, MinkVector, Orientation, Projection, MAX_N, MIN_N,
};
pub use velocity::{
    mobius_add, mobius_neg, mobius_sub, rapidity_add, rapidity_to_velocity, relative_velocity,
    velocity_add, velocity_add_via_components, velocity_add_via_parallelogram,
    velocity_to_rapidity, DiskChart, Rapidity, Velocity,
};

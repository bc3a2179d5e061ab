use std::fmt;

use crate::geodesics::Signature;

/// Which part of the extended kinematic space a projective point lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Timelike directions: inertial observers.
    K,
    /// Lightlike directions: photons, the absolute.
    BoundaryK,
    /// Spacelike directions: the de Sitter component.
    G,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::K => f.write_str("K"),
            Region::BoundaryK => f.write_str("boundary of K"),
            Region::G => f.write_str("G"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported space dimension n = {0} (supported: 2..=16)")]
    UnsupportedDimension(usize),

    #[error("operation is only defined for n = 2, found n = {0}")]
    RequiresPlane(usize),

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("zero vector")]
    ZeroVector,

    #[error("isotropic vector where a non-isotropic one is required")]
    Isotropic,

    #[error("expected a point in {expected}, found a point in {found}")]
    Region {
        expected: &'static str,
        found: Region,
    },

    #[error("restricted form is degenerate on the span")]
    DegenerateForm,

    #[error("vectors are linearly dependent")]
    LinearlyDependent,

    #[error("points coincide")]
    CoincidentPoints,

    #[error("vector is not tangent at the base point (defect {0:e})")]
    NotTangent(f64),

    #[error("geodesic has signature {0:?}, expected MinusPlus")]
    WrongSignature(Signature),

    #[error("speed {speed} is not below the speed of light {c}: rapidity is infinite")]
    InfiniteRapidity { speed: f64, c: f64 },

    #[error("operands are attached to different base points")]
    BaseMismatch,

    #[error("operands use different scales")]
    ScaleMismatch,

    #[error("matrix does not preserve the Minkowski form (defect {0:e})")]
    NotLorentz(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("proper time {tau} is outside the usable range [{lo}, {hi}]")]
    OutOfRange { tau: f64, lo: f64, hi: f64 },

    #[error("sample {index} is not parameterized by proper time (defect {defect:e})")]
    NotNormalized { index: usize, defect: f64 },

    #[error("curve has no samples")]
    EmptyCurve,

    #[error("integration blew up at proper time {tau}")]
    BlowUp { tau: f64 },

    #[error("force field evaluation failed at proper time {tau}: {message}")]
    FieldEvaluation { tau: f64, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn expect_region(found: Region, expected: Region) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::Region {
            expected: match expected {
                Region::K => "K",
                Region::BoundaryK => "the boundary of K",
                Region::G => "G",
            },
            found,
        })
    }
}

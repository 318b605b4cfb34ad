use thiserror::Error;

use crate::lattice::LatticeVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong when building or querying toric data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero vector has no primitive direction")]
    ZeroVector,

    #[error("lines with normals {0} and {1} are parallel")]
    ParallelLines(LatticeVector, LatticeVector),

    #[error("ray {0} is not primitive")]
    NonPrimitiveRay(LatticeVector),

    #[error("ray {0} appears more than once")]
    DuplicateRay(LatticeVector),

    #[error("a fan needs at least 3 rays, got {0}")]
    TooFewRays(usize),

    #[error("rays do not form a complete fan: {0}")]
    NotComplete(String),

    #[error("cone {index} has index {det}, expected a smooth cone")]
    SingularCone { index: usize, det: i128 },

    #[error("fan is not smooth; intersection numbers need a smooth fan")]
    SingularFan,

    #[error("ray index {index} out of range for a fan with {len} rays")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid fake plane: {0}")]
    InvalidFakePlane(String),

    #[error("intersection vector has length {got}, fan has {expected} rays")]
    LengthMismatch { expected: usize, got: usize },

    #[error("a curve needs at least 2 monomials, got {0}")]
    TooFewTerms(usize),

    #[error("exponent {0} appears more than once")]
    DuplicateExponent(LatticeVector),

    #[error("coefficient of exponent {0} is zero")]
    ZeroCoefficient(LatticeVector),

    #[error("cannot evaluate a Laurent polynomial at a point with a zero coordinate")]
    ZeroCoordinate,

    #[error("lattice coordinate does not fit in 64 bits")]
    Overflow,

    #[error("invalid argument: {0}")]
    Domain(String),

    /// A structural certificate from the classification failed. This is a bug,
    /// never a property of valid input.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

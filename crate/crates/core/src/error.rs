use thiserror::Error;

/// Errors raised by the library. CLI-only failures live in [`crate::cli`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero vector cannot define a hyperplane")]
    ZeroNormal,

    #[error("linear form must be nonzero and of degree 1")]
    BadLinearForm,

    #[error("polynomial is not homogeneous")]
    Inhomogeneous,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("hyperplane index {index} out of range for arrangement of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("duplicate hyperplane: index {first} and index {second} have the same normal")]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("multiplicity must be positive (index {index})")]
    ZeroMultiplicity { index: usize },

    #[error("multiplicity vector has length {got}, arrangement has {expected} hyperplanes")]
    MultiplicityLength { expected: usize, got: usize },

    #[error("malformed flat: {0}")]
    MalformedFlat(String),

    #[error("arrangement is not totally free")]
    NotTotallyFree,

    #[error("input is not an irreducible arrangement of rank >= 3: {0}")]
    ReducibleInput(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use std::fmt;

/// Errors raised by the analytic and verification layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument that must be finite was NaN or infinite.
    NonFinite { what: &'static str, value: f64 },
    /// An argument fell outside its admissible interval.
    OutOfRange { what: &'static str, value: f64 },
    /// Vector or matrix dimensions do not agree.
    DimensionMismatch { expected: usize, found: usize },
    /// Two paired sequences have different lengths.
    LengthMismatch { what: &'static str, left: usize, right: usize },
    /// A matrix required to be positive definite is not (eigenvalue or
    /// Cholesky pivot at or below the tolerance).
    NotPositiveDefinite,
    /// A half-space was given a zero normal vector.
    DegenerateHalfSpace,
    /// Operation undefined for a model with coincident class means
    /// (zero discriminant scale).
    DegenerateModel,
    /// A dataset lacks one of the two classes entirely.
    MissingClass { label: u8 },
    /// A class has too few rows to estimate its moments.
    ClassTooSmall { label: u8, count: usize },
    /// A label value other than 0 or 1.
    InvalidLabel { index: usize, value: u8 },
    /// Not enough points to carry out the operation.
    TooFewPoints { found: usize, needed: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { what, value } => {
                write!(f, "{what} must be finite, got {value}")
            }
            Error::OutOfRange { what, value } => {
                write!(f, "{what} out of range: {value}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::LengthMismatch { what, left, right } => {
                write!(f, "{what}: lengths differ ({left} vs {right})")
            }
            Error::NotPositiveDefinite => write!(f, "matrix is not positive definite"),
            Error::DegenerateHalfSpace => write!(f, "half-space normal vector is zero"),
            Error::DegenerateModel => {
                write!(f, "model is degenerate (coincident class means)")
            }
            Error::MissingClass { label } => write!(f, "no rows with label {label}"),
            Error::ClassTooSmall { label, count } => {
                write!(f, "class {label} has only {count} row(s), need at least 2")
            }
            Error::InvalidLabel { index, value } => {
                write!(f, "label at index {index} is {value}, must be 0 or 1")
            }
            Error::TooFewPoints { found, needed } => {
                write!(f, "need at least {needed} points, got {found}")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

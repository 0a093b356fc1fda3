use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degree overflow: {0}")]
    DegreeOverflow(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix")]
    Singular,
    #[error("element is not imaginary")]
    NotImaginary,
    #[error("element is not isotropic (NONISOTROPIC)")]
    NonIsotropic,
    #[error("subspace is not closed under the product (NOT_SUBALGEBRA)")]
    NotSubalgebra,
    #[error("plane is not a null-plane")]
    NotNullPlane,
    #[error("action is not diagonalizable over Q(i) (NEEDS_EXTENSION)")]
    NeedsExtension,
    #[error("not a root system: {0}")]
    NotRootSystem(String),
    #[error("invalid root system type: {0}")]
    InvalidType(String),
    #[error("calibration system inconsistent (CALIBRATION_FAILED): {0}")]
    CalibrationFailed(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

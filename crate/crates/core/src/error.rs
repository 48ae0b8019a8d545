use thiserror::Error;

/// Every failure the library can report. Each variant maps to a stable
/// machine-readable code via [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("polynomial is not weighted homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("quotient is not zero-dimensional")]
    NotZeroDimensional,
    #[error("root `{0}` is not a root of the system")]
    NotARoot(String),
    #[error("invalid Hessenberg space: {0}")]
    InvalidHessenberg(String),
    #[error("degree mismatch for {coordinate}: expected {expected}, found {found}")]
    DegreeMismatch {
        coordinate: String,
        expected: u32,
        found: String,
    },
    #[error("the vector field has a non-isolated zero at the origin")]
    NotIsolatedZero,
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
    #[error("component restriction needs a projective-space model")]
    WrongProvenance,
    #[error("trace is not a polynomial in v: {0}")]
    NonPolynomialTrace(String),
    #[error("the Jacobian class is not invertible modulo the ideal")]
    JacobianNotInvertible,
    #[error("the Jacobian class is singular on the fiber v = {0}")]
    SingularJacobianAtFiber(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("congruence failed: {0}")]
    CongruenceFailed(String),
    #[error("Poincare series mismatch: {0}")]
    Mismatch(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::UnknownVariable { .. } => "UNKNOWN_VARIABLE",
            Error::Syntax { .. } => "SYNTAX_ERROR",
            Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            Error::RingMismatch(_) => "RING_MISMATCH",
            Error::InvalidRing(_) => "INVALID_RING",
            Error::NotHomogeneous(_) => "NOT_HOMOGENEOUS",
            Error::NotZeroDimensional => "NOT_ZERO_DIMENSIONAL",
            Error::NotARoot(_) => "NOT_A_ROOT",
            Error::InvalidHessenberg(_) => "INVALID_HESSENBERG",
            Error::DegreeMismatch { .. } => "DEGREE_MISMATCH",
            Error::NotIsolatedZero => "NOT_ISOLATED_ZERO",
            Error::CertificateFailed(_) => "CERTIFICATE_FAILED",
            Error::WrongProvenance => "WRONG_PROVENANCE",
            Error::NonPolynomialTrace(_) => "NONPOLYNOMIAL_TRACE",
            Error::JacobianNotInvertible => "J_NOT_INVERTIBLE",
            Error::SingularJacobianAtFiber(_) => "SINGULAR_J_AT_FIBER",
            Error::CheckFailed(_) => "CHECK_FAILED",
            Error::CongruenceFailed(_) => "CONGRUENCE_FAILED",
            Error::Mismatch(_) => "MISMATCH",
            Error::InvalidModel(_) => "INVALID_MODEL",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

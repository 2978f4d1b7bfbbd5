use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Largest `|m[i][j] - conj(m[j][i])|` exceeded the tolerance.
    NotHermitian { residual: f64 },
    /// The trace differs from one by more than the tolerance.
    TraceNotOne { trace: f64 },
    /// An eigenvalue is below `-tolerance`.
    NotPositiveSemidefinite { min_eigenvalue: f64, tolerance: f64 },
    DimensionMismatch { expected: usize, found: usize },
    /// Jacobi sweeps exhausted before the off-diagonal norm dropped below threshold.
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    /// SU(2) parameters do not satisfy `t² + |y|² = 1`.
    NotNormalized { norm_squared: f64 },
    /// A measurement family failed one of its projector identities.
    FamilyInvariantViolation { invariant: &'static str, residual: f64 },
    /// Only qubit and qutrit measured sides are supported.
    UnsupportedDimension { dim: usize },
    /// Parameter-counting closed form not available for this family/dimension.
    UnsupportedFamilyDimension { family: &'static str, dim: usize },
    DomainError { what: &'static str, value: f64 },
    KetsNotOrthonormal { residual: f64 },
    /// A block that should be X-shaped has entries off the diagonal/anti-diagonal.
    NotXPatterned { magnitude: f64 },
    InvalidConfig { what: &'static str },
}

impl Error {
    /// Short name of the violated invariant, stable for tooling.
    pub fn invariant(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::TraceNotOne { .. } => "TraceNotOne",
            Error::NotPositiveSemidefinite { .. } => "NotPositiveSemidefinite",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::FamilyInvariantViolation { .. } => "FamilyInvariantViolation",
            Error::UnsupportedDimension { .. } => "UnsupportedDimension",
            Error::UnsupportedFamilyDimension { .. } => "UnsupportedFamilyDimension",
            Error::DomainError { .. } => "DomainError",
            Error::KetsNotOrthonormal { .. } => "KetsNotOrthonormal",
            Error::NotXPatterned { .. } => "NotXPatterned",
            Error::InvalidConfig { .. } => "InvalidConfig",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotHermitian { residual } => {
                write!(f, "matrix is not Hermitian (max residual {residual:e})")
            }
            Error::TraceNotOne { trace } => write!(f, "trace is {trace}, expected 1"),
            Error::NotPositiveSemidefinite { min_eigenvalue, tolerance } => write!(
                f,
                "matrix is not positive semidefinite (eigenvalue {min_eigenvalue:e} < -{tolerance:e})"
            ),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NoConvergence { sweeps, off_diagonal } => write!(
                f,
                "eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})"
            ),
            Error::NotNormalized { norm_squared } => {
                write!(f, "SU(2) parameters not normalized (t² + |y|² = {norm_squared})")
            }
            Error::FamilyInvariantViolation { invariant, residual } => {
                write!(f, "measurement family violates {invariant} (residual {residual:e})")
            }
            Error::UnsupportedDimension { dim } => {
                write!(f, "measured subsystem dimension {dim} unsupported (only 2 and 3)")
            }
            Error::UnsupportedFamilyDimension { family, dim } => {
                write!(f, "no closed-form count for family `{family}` at local dimension {dim}")
            }
            Error::DomainError { what, value } => write!(f, "{what} out of range: {value}"),
            Error::KetsNotOrthonormal { residual } => {
                write!(f, "kets are not orthonormal (residual {residual:e})")
            }
            Error::NotXPatterned { magnitude } => {
                write!(f, "block is not X-patterned (off-pattern magnitude {magnitude:e})")
            }
            Error::InvalidConfig { what } => write!(f, "invalid configuration: {what}"),
        }
    }
}

impl core::error::Error for Error {}

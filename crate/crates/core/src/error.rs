use thiserror::Error;

use crate::assembly::Violation;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("lattice vector ({0}, {1}) is not primitive")]
    NonPrimitive(String, String),

    #[error("marking twist {0} is outside [0, 1)")]
    NotNormalized(String),

    #[error("basis change has determinant {0}, expected +1")]
    NotUnimodular(String),

    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("foliations coincide up to sign; the universal cover would be reducible")]
    EqualFoliations,

    #[error("integers {0} and {1} are not coprime")]
    NotCoprime(String, String),

    #[error("slope {0} gives -q/p outside [0, 1); no orthogonal metric in this component")]
    SlopeOutOfRange(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("curvature shape is not positive at x = {0}")]
    InvalidShape(f64),

    #[error("shooting failed: {0}")]
    ShootingFailed(String),

    #[error("grid too coarse: {got} points, need at least {min}")]
    GridTooCoarse { got: usize, min: usize },

    #[error("disk boundary is not flat (k = {order}: |h^(k)| = {value:e} > {threshold:e})")]
    BoundaryNotFlat { order: usize, value: f64, threshold: f64 },

    #[error("profile is singular: h({rho}) = {h} away from the pole")]
    ProfileSingular { rho: f64, h: f64 },

    #[error("curvature density {value:e} below -{tol:e} at s = {s}, grid point ({j}, {k})")]
    CurvatureSignViolation { s: f64, j: usize, k: usize, value: f64, tol: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("invalid description: {}", join_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl Error {
    /// Short machine-readable tag, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonPrimitive(..) => "non_primitive",
            Error::NotNormalized(_) => "not_normalized",
            Error::NotUnimodular(_) => "not_unimodular",
            Error::NotPositiveDefinite => "not_positive_definite",
            Error::EqualFoliations => "equal_foliations",
            Error::NotCoprime(..) => "not_coprime",
            Error::SlopeOutOfRange(_) => "slope_out_of_range",
            Error::OutOfRange(_) => "out_of_range",
            Error::InvalidShape(_) => "invalid_shape",
            Error::ShootingFailed(_) => "shooting_failed",
            Error::GridTooCoarse { .. } => "grid_too_coarse",
            Error::BoundaryNotFlat { .. } => "boundary_not_flat",
            Error::ProfileSingular { .. } => "profile_singular",
            Error::CurvatureSignViolation { .. } => "curvature_sign_violation",
            Error::GridMismatch(_) => "grid_mismatch",
            Error::Invalid(_) => "invalid_description",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }

    /// True for failures of the input's mathematical hypotheses, as opposed
    /// to I/O, parsing or numerical breakdown.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::Io(_)
                | Error::Parse(_)
                | Error::ShootingFailed(_)
                | Error::GridTooCoarse { .. }
                | Error::GridMismatch(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Everything that can go wrong between parameter validation and the oracle
/// cross-check.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("degenerate potential: {0}")]
    DegeneratePotential(String),

    #[error("unsupported branch: {0}")]
    UnsupportedBranch(String),

    #[error("complex residues: discriminant {discriminant} is negative")]
    ComplexResidues { discriminant: f64 },

    #[error("inadmissible parameters: v2 = {v2} but the QES condition requires v2 = {required}")]
    InadmissibleParameters { v2: f64, required: f64 },

    #[error("no admissible QES sets for lambda = {0}")]
    NoAdmissibleSets(f64),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("pole: wavefunction vanishes at x = {0}")]
    Pole(f64),

    #[error("contour collision: a zero of the polynomial lies within {distance:e} of the contour")]
    ContourCollision { distance: f64 },

    #[error("degenerate vector: all entries are negligible")]
    DegenerateVector,

    #[error("oracle mismatch: analytic level E = {energy} has no oracle eigenvalue within {window:e}")]
    OracleMismatch { energy: f64, window: f64 },

    #[error("oracle collision: analytic levels E = {first} and E = {second} map to the same oracle eigenvalue")]
    OracleCollision { first: f64, second: f64 },
}

impl Error {
    /// Short machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::InvalidParameters(_) => "invalid-parameters",
            Error::DegeneratePotential(_) => "degenerate-potential",
            Error::UnsupportedBranch(_) => "unsupported-branch",
            Error::ComplexResidues { .. } => "complex-residues",
            Error::InadmissibleParameters { .. } => "inadmissible-parameters",
            Error::NoAdmissibleSets(_) => "no-admissible-sets",
            Error::Numeric(_) => "numeric",
            Error::InvariantViolation(_) => "invariant-violation",
            Error::Pole(_) => "pole",
            Error::ContourCollision { .. } => "contour-collision",
            Error::DegenerateVector => "degenerate-vector",
            Error::OracleMismatch { .. } => "oracle-mismatch",
            Error::OracleCollision { .. } => "oracle-collision",
        }
    }

    /// True for the adjudication failures of the oracle cross-check, as
    /// opposed to usage or parameter errors.
    pub fn is_mismatch(&self) -> bool {
        matches!(
            self,
            Error::OracleMismatch { .. } | Error::OracleCollision { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

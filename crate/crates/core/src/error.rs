use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// Every variant maps to a stable, machine-readable code via [`Error::code`]
/// so that reports stay comparable across versions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generators must be positive integers, got {0}")]
    NonPositiveGenerator(i64),
    #[error("generators have gcd {gcd} > 1; the semigroup is not numerical")]
    NonCoprimeGenerators { gcd: u32 },
    #[error("invalid Puiseux characteristic: {0}")]
    InvalidPuiseux(String),
    #[error("generator {index} does not refine the gcd ladder (n_{index} = 1)")]
    NotMinimal { index: usize },
    #[error("{target} is not representable by the generators below index {index}")]
    Unrepresentable { index: usize, target: u64 },
    #[error("index {index} out of range 1..={g}")]
    IndexOutOfRange { index: usize, g: usize },
    #[error("not a plane-branch semigroup: {0}")]
    NotPlaneBranch(String),
    #[error("infinity chart normalization failed: {0}")]
    NormalizationFailed(String),
    #[error("graded quotient has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("deformation parameter {index} has weight zero")]
    ZeroWeightParameter { index: usize },
    #[error("no monomial lift for semigroup degree {degree}")]
    LiftFailed { degree: u64 },
    #[error("equation {equation} is not weighted-homogeneous of weight {expected}")]
    Inhomogeneous { equation: usize, expected: i64 },
    #[error("term {term} of equation {equation} needs Z^{exponent}")]
    NegativeZExponent {
        equation: usize,
        term: String,
        exponent: i64,
    },
    #[error("family and projective model disagree: {0}")]
    ModelMismatch(String),
    #[error("unsupported field order {0}")]
    UnsupportedField(u32),
    #[error("budget exceeded: {what} = {value} > {cap}")]
    BudgetExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("need at least {needed} distinct field sizes, got {got}")]
    InsufficientFields { needed: usize, got: usize },
    #[error("point count at q = {q} is {observed} but the interpolated polynomial predicts {predicted}")]
    InterpolationMismatch {
        q: u32,
        observed: String,
        predicted: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyGenerators => "E_EMPTY_GENERATORS",
            Error::NonPositiveGenerator(_) => "E_NONPOSITIVE_GENERATOR",
            Error::NonCoprimeGenerators { .. } => "E_NONCOPRIME",
            Error::InvalidPuiseux(_) => "E_INVALID_PUISEUX",
            Error::NotMinimal { .. } => "E_NOT_MINIMAL",
            Error::Unrepresentable { .. } => "E_UNREPRESENTABLE",
            Error::IndexOutOfRange { .. } => "E_INDEX_RANGE",
            Error::NotPlaneBranch(_) => "E_NOT_PLANE_BRANCH",
            Error::NormalizationFailed(_) => "E_NORMALIZATION",
            Error::DimensionMismatch { .. } => "E_DIMENSION",
            Error::ZeroWeightParameter { .. } => "E_ZERO_WEIGHT",
            Error::LiftFailed { .. } => "E_LIFT",
            Error::Inhomogeneous { .. } => "E_INHOMOGENEOUS",
            Error::NegativeZExponent { .. } => "E_NEGATIVE_Z",
            Error::ModelMismatch(_) => "E_MODEL_MISMATCH",
            Error::UnsupportedField(_) => "E_FIELD",
            Error::BudgetExceeded { .. } => "E_BUDGET",
            Error::InsufficientFields { .. } => "E_INSUFFICIENT_FIELDS",
            Error::InterpolationMismatch { .. } => "E_INTERPOLATION",
            Error::Parse(_) => "E_PARSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

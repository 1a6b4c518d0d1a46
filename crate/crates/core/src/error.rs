use thiserror::Error;

/// Every failure the library can report, named as the CLI surfaces it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("OriginNotInterior: the origin is not an interior point of the polytope")]
    OriginNotInterior,
    #[error("NotGorenstein: {0}")]
    NotGorenstein(String),
    #[error("DimensionBudgetExceeded: dimension {dim} exceeds the budget {budget}")]
    DimensionBudgetExceeded { dim: usize, budget: usize },
    #[error("NotReflexivePair: {0}")]
    NotReflexivePair(String),
    #[error("DegenerateLift: {0}")]
    DegenerateLift(String),
    #[error("NotEulerian: interval [{lo}, {hi}] is unbalanced")]
    NotEulerian { lo: usize, hi: usize },
    #[error("NotGraded: {0}")]
    NotGraded(String),
    #[error("NotSimplicial: cone has {generators} generators but dimension {dim}")]
    NotSimplicial { generators: usize, dim: usize },
    #[error("DivisionNotExact: {0}")]
    DivisionNotExact(String),
    #[error("NegativeHodgeNumber: h^({p},{q}) = {value}")]
    NegativeHodgeNumber { p: i64, q: i64, value: String },
    #[error("NotComplete: {0}")]
    NotComplete(String),
    #[error("ConeNotInFan: {0}")]
    ConeNotInFan(String),
    #[error("InvalidSubdivision: {0}")]
    InvalidSubdivision(String),
    #[error("FieldCharacteristicTooSmall: {p} is below the minimum {min}")]
    FieldCharacteristicTooSmall { p: u64, min: u64 },
    #[error("UnsupportedField: {0}")]
    UnsupportedField(String),
    #[error("NotRegular: {0}")]
    NotRegular(String),
    #[error("NotGenericAfterRetries: no regular element after {attempts} attempts")]
    NotGenericAfterRetries { attempts: usize },
    #[error("CapTooSmall: cap {cap} is below the cone dimension {dim}")]
    CapTooSmall { cap: usize, dim: usize },
    #[error("PointOutsideCone: {0:?}")]
    PointOutsideCone(Vec<i64>),
    #[error("ParseError: {0}")]
    ParseError(String),
}

impl Error {
    /// The bare variant name, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::OriginNotInterior => "OriginNotInterior",
            Error::NotGorenstein(_) => "NotGorenstein",
            Error::DimensionBudgetExceeded { .. } => "DimensionBudgetExceeded",
            Error::NotReflexivePair(_) => "NotReflexivePair",
            Error::DegenerateLift(_) => "DegenerateLift",
            Error::NotEulerian { .. } => "NotEulerian",
            Error::NotGraded(_) => "NotGraded",
            Error::NotSimplicial { .. } => "NotSimplicial",
            Error::DivisionNotExact(_) => "DivisionNotExact",
            Error::NegativeHodgeNumber { .. } => "NegativeHodgeNumber",
            Error::NotComplete(_) => "NotComplete",
            Error::ConeNotInFan(_) => "ConeNotInFan",
            Error::InvalidSubdivision(_) => "InvalidSubdivision",
            Error::FieldCharacteristicTooSmall { .. } => "FieldCharacteristicTooSmall",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::NotRegular(_) => "NotRegular",
            Error::NotGenericAfterRetries { .. } => "NotGenericAfterRetries",
            Error::CapTooSmall { .. } => "CapTooSmall",
            Error::PointOutsideCone(_) => "PointOutsideCone",
            Error::ParseError(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

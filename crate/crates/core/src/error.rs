use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorization bound exceeded: {0}")]
    FactorBoundExceeded(String),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("element does not belong to the expected ring")]
    WrongRing,
    #[error("unsupported element: {0}")]
    UnsupportedElement(String),
    #[error("coordinate {0} is zero")]
    ZeroCoordinate(usize),
    #[error("coordinates come from different rings")]
    MixedRings,
    #[error("vector is not multiplicatively dependent")]
    NotDependent,
    #[error("input is a root of unity")]
    RootOfUnityInput,
    #[error("class number greater than one is not supported")]
    ClassNumberUnsupported,
    #[error("work budget of {budget} operations exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("precision ceiling of {bits} bits reached")]
    PrecisionCeilingReached { bits: u32 },
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("argument of the generator is a root of unity")]
    ArgumentIsRootOfUnity,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// True for failures caused by exhausting a work or precision budget
    /// rather than by invalid input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::FactorBoundExceeded(_)
                | Error::BudgetExceeded { .. }
                | Error::PrecisionCeilingReached { .. }
                | Error::SearchBudgetExceeded(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::FactorBoundExceeded(_) => "FactorBoundExceeded",
            Error::ZeroInput => "ZeroInput",
            Error::WrongRing => "WrongRing",
            Error::UnsupportedElement(_) => "UnsupportedElement",
            Error::ZeroCoordinate(_) => "ZeroCoordinate",
            Error::MixedRings => "MixedRings",
            Error::NotDependent => "NotDependent",
            Error::RootOfUnityInput => "RootOfUnityInput",
            Error::ClassNumberUnsupported => "ClassNumberUnsupported",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::InvalidParams(_) => "InvalidParams",
            Error::PrecisionCeilingReached { .. } => "PrecisionCeilingReached",
            Error::SearchBudgetExceeded(_) => "SearchBudgetExceeded",
            Error::ArgumentIsRootOfUnity => "ArgumentIsRootOfUnity",
            Error::Precondition(_) => "Precondition",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

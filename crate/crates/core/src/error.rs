use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid value for `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("component {component} out of range for level {level}")]
    ComponentOutOfRange { component: usize, level: usize },

    #[error("residue set is not adjacency-free: {0} and {1} differ by one")]
    AdjacencyViolation(i64, i64),

    #[error("gamma is not admissible: removable node {0}")]
    NotAdmissible(String),

    #[error("residue {residue} requested {requested} times but only {available} addable nodes")]
    MultisetTooLarge { residue: i64, requested: usize, available: usize },

    #[error("duplicate coordinate in loading: {0}")]
    DuplicateCoordinate(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("{0} is not an element of the gamma set")]
    NotInGamma(String),

    #[error("unbalanced decoration: {0}")]
    UnbalancedDecoration(String),

    #[error("positivity violation: {0}")]
    PositivityViolation(String),

    #[error("poset is not saturated: {0}")]
    NonSaturatedPoset(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("dominance assertion failed: {0}")]
    DominanceAssertion(String),

    #[error("engines disagree for {pair}: nested = {nested}, kn = {kn}")]
    EngineDisagreement { pair: String, nested: String, kn: String },

    #[error("diagonal model violation: {0}")]
    DiagonalModelViolation(String),

    #[error("{0} and {1} are not comparable")]
    NotComparable(String, String),

    #[error("incompatible contexts: {0}")]
    IncompatibleContexts(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation { field: field.into(), message: message.into() }
    }

    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::Validation { .. }
            | Error::ComponentOutOfRange { .. }
            | Error::AdjacencyViolation(..)
            | Error::NotAdmissible(_)
            | Error::MultisetTooLarge { .. }
            | Error::ContextMismatch(_)
            | Error::NotInGamma(_)
            | Error::NotComparable(..)
            | Error::IncompatibleContexts(_)
            | Error::Io(_) => 1,
            Error::EngineDisagreement { .. } => 3,
            _ => 2,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::Validation { .. } => "ValidationError",
            Error::ComponentOutOfRange { .. } => "ComponentOutOfRange",
            Error::AdjacencyViolation(..) => "AdjacencyViolation",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::MultisetTooLarge { .. } => "MultisetTooLarge",
            Error::DuplicateCoordinate(_) => "DuplicateCoordinate",
            Error::ContextMismatch(_) => "ContextMismatch",
            Error::NotInGamma(_) => "NotInGamma",
            Error::UnbalancedDecoration(_) => "UnbalancedDecoration",
            Error::PositivityViolation(_) => "PositivityViolation",
            Error::NonSaturatedPoset(_) => "NonSaturatedPoset",
            Error::DominanceAssertion(_) => "DominanceAssertion",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::EngineDisagreement { .. } => "EngineDisagreement",
            Error::DiagonalModelViolation(_) => "DiagonalModelViolation",
            Error::NotComparable(..) => "NotComparable",
            Error::IncompatibleContexts(_) => "IncompatibleContexts",
            Error::Io(_) => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by the relation, quotient, decomposition, embedding and
/// topology routines.
///
/// Witnesses are element labels in carrier order, so a report can be read
/// without access to the internal index layout.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must contain at least one element")]
    EmptyCarrier,
    #[error("duplicate label `{0}` in carrier")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("relations live on different carriers")]
    CarrierMismatch,
    #[error("relation is not an equivalence: {0}")]
    NotAnEquivalence(Witness),
    #[error("relation is not an indifference (reflexive and symmetric): {0}")]
    NotAnIndifference(Witness),
    #[error("relation is not a preorder: {0}")]
    NotAPreorder(Witness),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(Witness),
    #[error("relation is not a linear order: {0}")]
    NotALinearOrder(Witness),
    #[error("asymmetric part is not negatively transitive: {0}")]
    NotNegativelyTransitive(Witness),
    #[error("relation is not saturated: {0}")]
    NotSaturated(Witness),
    #[error("invalid (E, F) pair: {reason} {witness}")]
    PairInvalid { reason: String, witness: Witness },
    #[error("map is not constant on equivalence classes: {0}")]
    NotConstantOnClasses(Witness),
    #[error("map is not increasing: {0}")]
    NotIncreasing(Witness),
    #[error("elements `{0}` and `{1}` are already comparable")]
    AlreadyComparable(String, String),
    #[error("invalid bubble system: {0}")]
    InvalidSystem(String),
    #[error("set `{0}` is not open")]
    NotOpen(String),
    #[error("size {size} exceeds the limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("validation error: {0}")]
    Validation(String),
    /// A structural theorem that must hold for every valid input failed.
    #[error("invariant `{name}` violated: {detail}")]
    InvariantViolated { name: String, detail: String },
}

impl Error {
    pub(crate) fn invariant(name: &str, detail: impl Into<String>) -> Self {
        Error::InvariantViolated {
            name: name.to_string(),
            detail: detail.into(),
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// A tuple of element labels that violates some defining sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct Witness(pub Vec<String>);

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.0.join(", "))
    }
}

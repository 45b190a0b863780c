use thiserror::Error;

use crate::report::ValidationReport;

/// Errors raised by the institution and pi-institution machinery.
///
/// Law failures are never errors: checkers return them as violations in a
/// [`ValidationReport`]. Errors are reserved for malformed queries, failed
/// preconditions, and exceeded enumeration bounds.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("morphisms {first} and {second} are not composable")]
    NotComposable { first: String, second: String },

    #[error("unknown morphism {0}")]
    UnknownMorphism(String),

    #[error("composite of {first} and {second} is missing from the table")]
    MissingComposite { first: String, second: String },

    #[error("unknown signature {0}")]
    UnknownSignature(String),

    #[error("sentence {sentence} is not in the universe of {signature}")]
    SentenceOutOfUniverse { signature: String, sentence: String },

    #[error("model {model} is not a model of {signature}")]
    ModelOutOfUniverse { signature: String, model: String },

    #[error("universe of {signature} has {size} elements, above the enumeration cap {cap}")]
    UniverseTooLarge { signature: String, size: usize, cap: usize },

    #[error("search space of {size} candidates exceeds the bound {bound}")]
    SearchSpaceTooLarge { size: u128, bound: u128 },

    #[error("composition domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("duplicate identifier {0}")]
    DuplicateId(String),

    #[error("invalid institution ({} violations)", .0.violations.len())]
    InvalidInstitution(ValidationReport),

    #[error("invalid pi-institution ({} violations)", .0.violations.len())]
    InvalidPiInstitution(ValidationReport),

    #[error("invalid comorphism ({} violations)", .0.violations.len())]
    InvalidComorphism(ValidationReport),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

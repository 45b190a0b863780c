//! Propositional logics presented by finite logical matrices: formulas,
//! matrix consequence, strict and flexible signature translations, and
//! builders for the matching institutions and pi-institutions.

mod build;
mod formula;
mod matrix;
mod translation;

use thiserror::Error;

use crate::report::ValidationReport;

pub use build::{
    build_logics_pi_institution, build_matrix_institution, build_plus_comorphism, LogicArrow, MorphismKind, NamedLogic,
    MATRIX_SIGNATURE,
};
pub use formula::{
    count_formulas, enumerate_formulas, enumerate_formulas_bounded, parse_formula, parse_loose, render_formula,
    Formula, PropSignature, DEFAULT_FORMULA_BOUND,
};
pub use matrix::{eval_formula, matrix_consequence, LogicMatrix, LogicPresentation, Valuation};
pub use translation::{check_logic_morphism, check_logic_morphism_with, marker, translate_formula, SigTranslation};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at position {position}: {message}")]
    SyntaxError { position: usize, message: String },

    #[error("unknown symbol {0}")]
    UnknownSymbol(String),

    #[error("{symbol} expects {expected} arguments, found {found}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("{count} formulas exceed the enumeration bound {bound}")]
    ExplosionGuard { count: u128, bound: u128 },

    #[error("variable {0} has no value")]
    UnassignedVariable(String),

    #[error("no image for connective {0}")]
    MissingMapping(String),

    #[error("translated formulas need depth {required}, target depth cap is {available}")]
    DepthOverflow { required: usize, available: usize },

    #[error("invalid logic presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid translation: {0}")]
    InvalidTranslation(String),

    #[error("invalid logic morphism {id} ({} violations)", .report.violations.len())]
    InvalidLogicMorphism { id: String, report: ValidationReport },

    #[error("not a subcategory: {0}")]
    NotASubcategory(String),

    #[error(transparent)]
    Core(#[from] crate::error::Error),
}

pub type LogicResult<T> = std::result::Result<T, LogicError>;

//! Finite institutions, pi-institutions and the adjunction between them.
//!
//! Everything is finite and explicit: signature categories carry their
//! composition tables, sentence and model functors are maps between named
//! sets, and closure operators are checked exhaustively up to an
//! enumeration cap.

pub mod adjunction;
pub mod error;
pub mod fincat;
pub mod fixtures;
pub mod g_functor;
pub mod galois;
pub mod generate;
pub mod institution;
pub mod pi_institution;
pub mod proplogic;
pub mod report;
pub mod subset;

pub use adjunction::{
    check_counit, check_fg_identity, check_triangle_f, check_triangle_g, check_unit, check_universal_property, counit,
    count_inst_comorphisms, count_pi_comorphisms, transpose, unit, SearchLimits,
};
pub use error::{Error, Result};
pub use fincat::{
    check_category, check_functor, check_naturality, check_set_functor, Arrow, FinCat, FinFunctor, NatTransSet,
    SetFunctor, Variance,
};
pub use g_functor::{check_preimage_closed, g_morphism, g_object};
pub use galois::{check_galois_laws, check_lemma1, f_morphism, f_object, forget_models, models_star, sentences_star};
pub use institution::{
    check_inst_comorphism, check_inst_morphism, check_satisfaction_condition, compose_inst_comorphisms,
    identity_inst_comorphism, identity_inst_morphism, validate_institution, InstComorphism, InstMorphism, Institution,
    SatMatrix,
};
pub use pi_institution::{
    check_closure_laws, check_coherence, check_pi_comorphism, closed_sets, closure_of, compare_pi_institutions,
    compose_pi_comorphisms, identity_pi_comorphism, validate_pi_institution, Closure, PiComorphism, PiInstitution,
    SmallSubsets, SubsetSampler, DEFAULT_CAP,
};
pub use report::{Status, ValidationReport, Violation};
pub use subset::{Subset, Universe};

//! Number fields with a real embedding, real algebraic numbers, and
//! checkers for the height and separation inequalities used by the theorem
//! engine.

pub mod enumerate;
pub mod field;
pub mod kpoly;
pub mod lemmas;
pub mod multipoly;
pub mod number;
pub mod random;

pub use enumerate::{enumerate_algebraics, BoundSpec};
pub use field::{Field, FieldElement, NumberField};
pub use lemmas::{
    bombieri_bound, bombieri_gap_check, height_bound_product, height_bound_sum, icen_check, GapCheck, HeightCheck,
    IcenCheck,
};
pub use multipoly::MultiPoly;
pub use number::{minimal_polynomial, AlgebraicNumber};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraicError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("the zero element has no inverse")]
    ZeroElement,
    #[error("the two algebraic numbers are equal")]
    EqualNumbers,
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("the relation does not vanish at the given point")]
    RelationNotSatisfied,
    #[error("relation must have degree greater than 1 in y (got {0})")]
    DegreeInYTooSmall(usize),
    #[error("polynomial {0} is reducible over Q")]
    NotIrreducible(String),
    #[error("could not certify irreducibility of {0}")]
    IrreducibilityUnknown(String),
    #[error("interval does not isolate exactly one root")]
    EmbeddingNotIsolating,
    #[error("expected {expected} coordinates, got {got}")]
    WrongCoordinateCount { expected: usize, got: usize },
    #[error("at least one element is required")]
    EmptyInput,
    #[error("invalid bound specification")]
    InvalidBound,
    #[error("parse error: {0}")]
    Parse(String),
}

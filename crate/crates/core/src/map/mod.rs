//! Rational maps over number fields applied to Liouville-class numbers,
//! and certified checks of the height and approximation inequalities along
//! the resulting sequence of algebraic approximants.

pub mod audit;
pub mod chain;
pub mod dsl;
pub mod rational_map;

use thiserror::Error;

use crate::algebraic::AlgebraicError;
use crate::exact::ExactError;
use crate::liouville::LiouvilleError;

pub use audit::{lower_degree_audit, map_of_number, AuditReport, AuditWorst};
pub use chain::{
    approximant_sequence, measure_growth_constant, verify_theorem_chain, ApproximantRecord, ChainEntry, GrowthConstant,
    TheoremReport,
};
pub use dsl::parse_map;
pub use rational_map::{
    derivative_bound, eval_at_rational, map_enclosure, map_enclosure_at, normalize_map, primitivity_scan, PrimitivityScan,
    RationalMap,
};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum MapError {
    #[error(transparent)]
    Algebraic(#[from] AlgebraicError),
    #[error(transparent)]
    Liouville(#[from] LiouvilleError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("map is constant after reduction")]
    ConstantMap,
    #[error("map has a pole at {0}")]
    PoleAtAlpha(String),
    #[error("denominator may vanish on the interval")]
    PoleInInterval,
    #[error("no approximant records")]
    EmptyRecords,
    #[error("audited degree {n} must be below the field degree {m}")]
    DegreeNotBelowM { n: usize, m: usize },
    #[error("refinement budget exhausted")]
    RefinementBudgetExceeded,
    #[error("growth constant must exceed 1")]
    GrowthConstantNotAboveOne,
    #[error("parse error: {0}")]
    Parse(String),
}

//! Exact arithmetic substrate: rationals, rational intervals, integer
//! polynomials, real root isolation and certified logarithms.

pub mod interval;
pub mod irreducible;
pub mod log;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod upoly;

pub use interval::{interval_eval, Expr, RationalInterval};
pub use poly::IntPolynomial;
pub use rational::Rational;
pub use roots::{isolate_real_roots, refine_root, SturmSequence};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by an interval containing zero")]
    DivisionByIntervalContainingZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not square-free")]
    NotSquarefree,
    #[error("interval does not bracket a sign change")]
    NoSignChange,
    #[error("interval lower bound exceeds upper bound")]
    InvalidInterval,
    #[error("requested width must be positive")]
    NonPositiveWidth,
    #[error("logarithm of a non-positive number")]
    NonPositiveLogArgument,
    #[error("negative exponent in power comparison")]
    NegativeExponent,
    #[error("exact power comparison too large to evaluate")]
    ExponentTooLarge,
    #[error("unbound variable '{0}'")]
    UnboundVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

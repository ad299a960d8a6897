//! Exact arithmetic for Liouville-class numbers and their images under
//! rational maps with algebraic coefficients.
//!
//! Every inequality checked by this crate is decided with exact rational
//! arithmetic: reals are represented by refinable enclosures with rational
//! endpoints and logarithms by certified rational intervals.

pub mod algebraic;
pub mod exact;
pub mod liouville;
pub mod map;

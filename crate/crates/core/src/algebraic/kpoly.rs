//! Univariate polynomials with number-field coefficients, stored as
//! ascending coefficient vectors of `FieldElement`.

use super::field::{Field, FieldElement};
use num_traits::Zero;

use crate::exact::rational::Rational;
use crate::exact::{ExactError, IntPolynomial, RationalInterval};

pub fn from_int_poly(field: &Field, p: &IntPolynomial) -> Vec<FieldElement> {
    p.to_rational().into_iter().map(|c| FieldElement::from_rational(field, c)).collect()
}

pub fn eval_at(p: &[FieldElement], x: &FieldElement) -> FieldElement {
    crate::exact::upoly::eval(p, x)
}

pub fn eval_at_rational(field: &Field, p: &[FieldElement], x: &Rational) -> FieldElement {
    eval_at(p, &FieldElement::from_rational(field, x.clone()))
}

/// Enclosure of `{ p(x) : x in iv }` using coefficient enclosures computed
/// with `theta` refined to `theta_width`.
pub fn enclosure(p: &[FieldElement], iv: &RationalInterval, theta_width: &Rational) -> Result<RationalInterval, ExactError> {
    let mut acc = RationalInterval::point(Rational::zero());
    for c in p.iter().rev() {
        acc = acc.mul(iv).add(&c.enclosure(theta_width)?);
    }
    Ok(acc)
}

/// Like [`enclosure`] with a given enclosure of `theta`.
pub fn enclosure_at(p: &[FieldElement], iv: &RationalInterval, theta: &RationalInterval) -> RationalInterval {
    let mut acc = RationalInterval::point(Rational::zero());
    for c in p.iter().rev() {
        acc = acc.mul(iv).add(&c.enclosure_at(theta));
    }
    acc
}

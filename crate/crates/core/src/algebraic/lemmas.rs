//! Checkers for the separation and height inequalities between algebraic
//! numbers: the Bombieri-type gap, the height of roots of relations with
//! algebraic coefficients, and height bounds for sums and products.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::Serialize;

use super::field::{Field, FieldElement};
use super::kpoly;
use super::multipoly::MultiPoly;
use super::number::{minimal_polynomial, AlgebraicNumber};
use super::AlgebraicError;
use crate::exact::rational::{self, Rational};
use crate::exact::upoly;

#[derive(Clone, Debug, Serialize)]
pub struct GapCheck {
    #[serde(serialize_with = "rational::serialize")]
    pub bound: Rational,
    pub verified: bool,
}

/// `(4 n1 n2)^(-3 n1 n2) H1^(-n2) H2^(-n1)`.
pub fn bombieri_bound(n1: usize, h1: &BigInt, n2: usize, h2: &BigInt) -> Rational {
    let nn = n1 * n2;
    let den = num_traits::pow(BigInt::from(4 * nn), 3 * nn) * num_traits::pow(h1.clone(), n2) * num_traits::pow(h2.clone(), n1);
    Rational::new(BigInt::one(), den)
}

/// Certifies `|a1 - a2| > bound` by refining both enclosures until the
/// comparison is decided.
pub fn bombieri_gap_check(a1: &AlgebraicNumber, a2: &AlgebraicNumber) -> Result<GapCheck, AlgebraicError> {
    if a1.same_number(a2) {
        return Err(AlgebraicError::EqualNumbers);
    }
    let bound = bombieri_bound(a1.degree(), &a1.height(), a2.degree(), &a2.height());
    // Below this width an undecided comparison means |a1 - a2| = bound.
    let floor = rational::mul_pow2(&bound, -256);
    let mut w = rational::rat(1, 64);
    loop {
        let d = a1.distance_enclosure(a2, &w)?;
        if rational::lt(&bound, d.lo()) {
            return Ok(GapCheck { bound, verified: true });
        }
        if rational::le(d.hi(), &bound) || rational::lt(&w, &floor) {
            return Ok(GapCheck { bound, verified: false });
        }
        w = rational::mul_pow2(&w, -16);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IcenCheck {
    pub degree_ok: bool,
    #[serde(serialize_with = "rational::serialize_big")]
    pub bound: BigInt,
    pub height_ok: bool,
}

fn common_field(elems: &[FieldElement]) -> Result<Field, AlgebraicError> {
    let first = elems.first().ok_or(AlgebraicError::EmptyInput)?;
    if elems.iter().any(|e| !e.field().same_field(first.field())) {
        return Err(AlgebraicError::FieldMismatch);
    }
    Ok(first.field().clone())
}

/// Whether `eta` is a root of `r`, a polynomial over the field of its
/// coefficients.
fn vanishes_at(field: &Field, r: &[FieldElement], eta: &AlgebraicNumber) -> Result<bool, AlgebraicError> {
    if r.is_empty() {
        return Ok(true);
    }
    if let Some(q) = eta.as_rational() {
        return Ok(kpoly::eval_at_rational(field, r, &q).is_zero());
    }
    // The minimal polynomial is square-free, so exactly one of g, mu/g
    // vanishes at eta.
    let mu = kpoly::from_int_poly(field, eta.min_poly());
    let g = upoly::gcd(r, &mu);
    if g.len() == 1 {
        return Ok(false);
    }
    if g.len() == mu.len() {
        return Ok(true);
    }
    let h = upoly::divrem(&mu, &g).0;
    let mut w = rational::rat(1, 256);
    loop {
        let e = eta.real_enclosure(&w)?;
        if !kpoly::enclosure(&g, &e, &w)?.contains_zero() {
            return Ok(false);
        }
        if !kpoly::enclosure(&h, &e, &w)?.contains_zero() {
            return Ok(true);
        }
        w = rational::mul_pow2(&w, -16);
    }
}

/// Degree and height bound for a root `eta` of `relation(y, alphas)`, where
/// the `alphas` lie in one field of degree `g`:
/// `H(eta) <= 3^(2dg + (l_1+...+l_k)g) H^g prod H(alpha_i)^(l_i g)`.
pub fn icen_check(relation: &MultiPoly, alphas: &[FieldElement], eta: &AlgebraicNumber) -> Result<IcenCheck, AlgebraicError> {
    let d = relation.degree_in_y();
    if d <= 1 {
        return Err(AlgebraicError::DegreeInYTooSmall(d));
    }
    if alphas.len() != relation.nvars() {
        return Err(AlgebraicError::WrongCoordinateCount { expected: relation.nvars(), got: alphas.len() });
    }
    let field = common_field(alphas)?;
    let r = relation.substitute(&field, alphas);
    if r.is_empty() || !vanishes_at(&field, &r, eta)? {
        return Err(AlgebraicError::RelationNotSatisfied);
    }
    let g = field.degree();
    let ls: Vec<usize> = (1..=alphas.len()).map(|i| relation.degree_in_x(i)).collect();
    let lsum: usize = ls.iter().sum();
    let mut bound = num_traits::pow(BigInt::from(3), 2 * d * g + lsum * g) * num_traits::pow(relation.height(), g);
    for (a, &l) in alphas.iter().zip(&ls) {
        if l > 0 {
            bound *= num_traits::pow(minimal_polynomial(a).height(), l * g);
        }
    }
    Ok(IcenCheck { degree_ok: eta.degree() <= d * g, height_ok: eta.height() <= bound, bound })
}

#[derive(Clone, Debug, Serialize)]
pub struct HeightCheck {
    #[serde(serialize_with = "rational::serialize_big")]
    pub bound: BigInt,
    #[serde(serialize_with = "rational::serialize_big")]
    pub actual: BigInt,
    pub ok: bool,
}

/// `ceil(c^d (d+1)^(n d / 2))`, the bracket of the sum (`c = 2n`) and
/// product (`c = 2`) height bounds raised to the field degree.
fn bracket_power(c: usize, n: usize, d: usize) -> BigInt {
    let base = num_traits::pow(BigUint::from(c), d);
    let nd = n * d;
    let v = if nd % 2 == 0 {
        base * num_traits::pow(BigUint::from(d + 1), nd / 2)
    } else {
        let sq = &base * &base * num_traits::pow(BigUint::from(d + 1), nd);
        rational::ceil_root(&sq, 2)
    };
    BigInt::from(v)
}

fn height_check(elems: &[FieldElement], c: usize, value: FieldElement) -> HeightCheck {
    let d = value.field().degree();
    let mut bound = bracket_power(c, elems.len(), d);
    for e in elems {
        bound *= num_traits::pow(minimal_polynomial(e).height(), d);
    }
    let actual = minimal_polynomial(&value).height();
    HeightCheck { ok: actual <= bound, bound, actual }
}

/// `H(a_1 + ... + a_n) <= [2n (d+1)^(n/2)]^d prod H(a_i)^d`.
pub fn height_bound_sum(elems: &[FieldElement]) -> Result<HeightCheck, AlgebraicError> {
    let field = common_field(elems)?;
    let sum = elems.iter().fold(FieldElement::zero(&field), |acc, e| &acc + e);
    Ok(height_check(elems, 2 * elems.len(), sum))
}

/// `H(a_1 ... a_n) <= [2 (d+1)^(n/2)]^d prod H(a_i)^d`.
pub fn height_bound_product(elems: &[FieldElement]) -> Result<HeightCheck, AlgebraicError> {
    let field = common_field(elems)?;
    let prod = elems.iter().fold(FieldElement::one(&field), |acc, e| &acc * e);
    Ok(height_check(elems, 2, prod))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::field::NumberField;
    use crate::exact::rational::{int, rat};
    use crate::exact::{IntPolynomial, RationalInterval};

    fn sqrt2_field() -> Field {
        NumberField::parse("[-2,0,1]@[1,2]").unwrap()
    }

    #[test]
    fn gap_between_zero_and_one() {
        let c = bombieri_gap_check(&AlgebraicNumber::from_rational(&int(0)), &AlgebraicNumber::from_rational(&int(1))).unwrap();
        assert_eq!(c.bound, rat(1, 64));
        assert!(c.verified);
    }

    #[test]
    fn gap_between_sqrt2_and_three_halves() {
        let s = minimal_polynomial(&FieldElement::theta(&sqrt2_field()));
        let c = bombieri_gap_check(&s, &AlgebraicNumber::from_rational(&rat(3, 2))).unwrap();
        assert_eq!(c.bound, rat(1, 4718592));
        assert!(c.verified);
        assert_eq!(bombieri_gap_check(&s, &s.clone()).unwrap_err(), AlgebraicError::EqualNumbers);
    }

    #[test]
    fn icen_rational_alpha() {
        // 2y^2 - x1 with x1 = 1 and eta = sqrt(2)/2.
        let q = NumberField::rationals();
        let mut rel = MultiPoly::new(1);
        rel.add_term(vec![2, 0], BigInt::from(2));
        rel.add_term(vec![0, 1], BigInt::from(-1));
        let eta = AlgebraicNumber::new(IntPolynomial::from_i64s(&[-1, 0, 2]), RationalInterval::new(int(0), int(1)).unwrap()).unwrap();
        let c = icen_check(&rel, &[FieldElement::one(&q)], &eta).unwrap();
        assert_eq!(c.bound, BigInt::from(486));
        assert!(c.degree_ok && c.height_ok);
    }

    #[test]
    fn icen_fourth_root_of_two() {
        let k = sqrt2_field();
        let mut rel = MultiPoly::new(1);
        rel.add_term(vec![2, 0], BigInt::from(1));
        rel.add_term(vec![0, 1], BigInt::from(-1));
        let eta = AlgebraicNumber::new(IntPolynomial::from_i64s(&[-2, 0, 0, 0, 1]), RationalInterval::new(int(1), int(2)).unwrap()).unwrap();
        let c = icen_check(&rel, &[FieldElement::theta(&k)], &eta).unwrap();
        assert_eq!(c.bound, BigInt::from(236196));
        assert!(c.degree_ok && c.height_ok);
        // -2^(1/4) also squares to sqrt2.
        let neg = AlgebraicNumber::new(IntPolynomial::from_i64s(&[-2, 0, 0, 0, 1]), RationalInterval::new(int(-2), int(-1)).unwrap()).unwrap();
        assert!(icen_check(&rel, &[FieldElement::theta(&k)], &neg).unwrap().height_ok);
        let mut rel2 = MultiPoly::new(1);
        rel2.add_term(vec![2, 0], BigInt::from(1));
        rel2.add_term(vec![0, 1], BigInt::from(-2));
        assert_eq!(icen_check(&rel2, &[FieldElement::theta(&k)], &eta).unwrap_err(), AlgebraicError::RelationNotSatisfied);
    }

    #[test]
    fn icen_trivial_and_degree_errors() {
        let q = NumberField::rationals();
        let mut rel = MultiPoly::new(1);
        rel.add_term(vec![2, 0], BigInt::from(1));
        rel.add_term(vec![0, 1], BigInt::from(-1));
        let c = icen_check(&rel, &[FieldElement::one(&q)], &AlgebraicNumber::from_rational(&int(1))).unwrap();
        assert_eq!(c.bound, BigInt::from(243));
        assert!(c.degree_ok && c.height_ok);
        let mut lin = MultiPoly::new(1);
        lin.add_term(vec![1, 0], BigInt::from(1));
        assert_eq!(
            icen_check(&lin, &[FieldElement::one(&q)], &AlgebraicNumber::from_rational(&int(0))).unwrap_err(),
            AlgebraicError::DegreeInYTooSmall(1)
        );
    }

    #[test]
    fn sum_bounds() {
        let q = NumberField::rationals();
        let c = height_bound_sum(&[FieldElement::from_rational(&q, rat(1, 2)), FieldElement::from_rational(&q, rat(1, 3))]).unwrap();
        assert_eq!((c.actual.clone(), c.bound.clone(), c.ok), (BigInt::from(6), BigInt::from(48), true));
        let k = sqrt2_field();
        let a = FieldElement::theta(&k);
        let b = FieldElement::new(&k, vec![int(1), int(1)]).unwrap();
        let c = height_bound_sum(&[a, b]).unwrap();
        assert_eq!((c.actual.clone(), c.bound.clone(), c.ok), (BigInt::from(7), BigInt::from(2304), true));
        let z = FieldElement::zero(&q);
        let c = height_bound_sum(&[z.clone(), z]).unwrap();
        assert_eq!(c.actual, BigInt::from(1));
        assert!(c.ok);
    }

    #[test]
    fn product_bounds() {
        let k = sqrt2_field();
        let t = FieldElement::theta(&k);
        let c = height_bound_product(&[t.clone(), t]).unwrap();
        assert_eq!((c.actual.clone(), c.bound.clone(), c.ok), (BigInt::from(2), BigInt::from(576), true));
        let q = NumberField::rationals();
        let c = height_bound_product(&[FieldElement::from_rational(&q, rat(1, 2)), FieldElement::from_rational(&q, rat(1, 3))]).unwrap();
        assert_eq!((c.actual.clone(), c.bound.clone(), c.ok), (BigInt::from(6), BigInt::from(24), true));
        let one = FieldElement::one(&q);
        assert!(height_bound_product(&[one.clone(), one]).unwrap().ok);
    }

    #[test]
    fn odd_bracket_uses_ceiling() {
        // n = 1, d = 1: [2 * 2^(1/2)]^1 = 2.828.. -> 3
        assert_eq!(bracket_power(2, 1, 1), BigInt::from(3));
        // n = 3, d = 1: 6 * 2^(3/2) = 16.97.. -> 17
        assert_eq!(bracket_power(6, 3, 1), BigInt::from(17));
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = FieldElement::theta(&sqrt2_field());
        let b = FieldElement::theta(&NumberField::pure_root(3, 2).unwrap());
        assert_eq!(height_bound_sum(&[a, b]).unwrap_err(), AlgebraicError::FieldMismatch);
        assert_eq!(height_bound_sum(&[]).unwrap_err(), AlgebraicError::EmptyInput);
    }
}

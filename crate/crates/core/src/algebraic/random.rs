//! Random instance generators for the randomized lemma suites.

use num_traits::Zero;
use rand::Rng;

use super::field::{Field, FieldElement};
use super::kpoly;
use super::multipoly::MultiPoly;
use super::number::AlgebraicNumber;
use crate::exact::rational::{self, Rational};

/// A rational `p/q` with `|p| <= max` and `1 <= q <= max`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max: i64) -> Rational {
    let p = rng.gen_range(-max..=max);
    let q = rng.gen_range(1..=max);
    rational::rat(p, q)
}

/// A field element with random rational coordinates.
pub fn random_element<R: Rng + ?Sized>(rng: &mut R, field: &Field, max: i64) -> FieldElement {
    let coords = (0..field.degree()).map(|_| random_rational(rng, max)).collect();
    FieldElement::new(field, coords).expect("one coordinate per basis element")
}

/// An instance of the quotient relation: `gamma = P(alpha) / Q(alpha)` with
/// random `P`, `Q` of degrees `l`, `r` over the field and random rational
/// `alpha`. Returns the relation, the values of `x_1, ..., x_{r+l+3}` and
/// `alpha` as the root.
pub fn quotient_instance<R: Rng + ?Sized>(
    rng: &mut R,
    field: &Field,
    r: usize,
    l: usize,
    max: i64,
) -> (MultiPoly, Vec<FieldElement>, AlgebraicNumber) {
    loop {
        let b: Vec<FieldElement> = (0..=r).map(|_| random_element(rng, field, max)).collect();
        let a: Vec<FieldElement> = (0..=l).map(|_| random_element(rng, field, max)).collect();
        if b[r].is_zero() && a[l].is_zero() {
            continue;
        }
        let alpha = random_rational(rng, max);
        if alpha.is_zero() && r.max(l) > 0 {
            continue;
        }
        let q = kpoly::eval_at_rational(field, &b, &alpha);
        if q.is_zero() {
            continue;
        }
        let gamma = &kpoly::eval_at_rational(field, &a, &alpha) * &q.inverse().expect("nonzero");
        let mut values = vec![gamma];
        values.extend(b);
        values.extend(a);
        return (MultiPoly::quotient_relation(r, l), values, AlgebraicNumber::from_rational(&alpha));
    }
}

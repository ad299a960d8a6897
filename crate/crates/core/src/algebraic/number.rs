//! Real algebraic numbers as (minimal polynomial, isolating interval).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::field::{FieldElement, RootCache};
use super::AlgebraicError;
use crate::exact::irreducible::is_irreducible;
use crate::exact::rational::{self, Rational};
use crate::exact::{ExactError, IntPolynomial, RationalInterval, SturmSequence};

/// A real algebraic number. `iso` isolates the designated root of the
/// primitive, irreducible `min_poly`.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    min_poly: IntPolynomial,
    iso: RationalInterval,
    cache: Arc<RootCache>,
}

impl AlgebraicNumber {
    /// Validating constructor: `min_poly` must be irreducible over `Q` and
    /// `iso` must contain exactly one of its roots.
    pub fn new(min_poly: IntPolynomial, iso: RationalInterval) -> Result<Self, AlgebraicError> {
        let p = min_poly.primitive_part()?;
        match is_irreducible(&p)? {
            Some(true) => {}
            Some(false) => return Err(AlgebraicError::NotIrreducible(p.to_string())),
            None => return Err(AlgebraicError::IrreducibilityUnknown(p.to_string())),
        }
        if SturmSequence::new(&p)?.count_in(&iso) != 1 {
            return Err(AlgebraicError::EmbeddingNotIsolating);
        }
        Ok(Self::trusted(p, iso))
    }

    /// Caller guarantees primitivity, irreducibility and isolation.
    pub(crate) fn trusted(min_poly: IntPolynomial, iso: RationalInterval) -> Self {
        let iso = if min_poly.degree() == Some(1) {
            let c = min_poly.coeffs();
            RationalInterval::point(Rational::new(-c[0].clone(), c[1].clone()))
        } else {
            iso
        };
        let cache = Arc::new(RootCache::new(min_poly.clone(), iso.clone()));
        Self { min_poly, iso, cache }
    }

    pub fn from_rational(r: &Rational) -> Self {
        let p = IntPolynomial::new(vec![-r.numer().clone(), r.denom().clone()]);
        Self::trusted(p, RationalInterval::point(r.clone()))
    }

    pub fn min_poly(&self) -> &IntPolynomial {
        &self.min_poly
    }

    pub fn iso(&self) -> &RationalInterval {
        &self.iso
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().expect("nonzero")
    }

    pub fn height(&self) -> BigInt {
        self.min_poly.height()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        (self.degree() == 1).then(|| self.iso.lo().clone())
    }

    /// An interval of width at most `width` containing the number.
    pub fn real_enclosure(&self, width: &Rational) -> Result<RationalInterval, ExactError> {
        self.cache.enclose(width)
    }

    /// Same minimal polynomial and the same isolated root.
    pub fn same_number(&self, other: &Self) -> bool {
        if self.min_poly != other.min_poly {
            return false;
        }
        match self.iso.intersect(&other.iso) {
            None => false,
            Some(iv) => SturmSequence::new(&self.min_poly).map(|s| s.count_in(&iv) == 1).unwrap_or(false),
        }
    }

    /// Total order on real values.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if self.same_number(other) {
            return Ordering::Equal;
        }
        let mut w = rational::rat(1, 256);
        loop {
            let a = self.real_enclosure(&w).expect("positive width");
            let b = other.real_enclosure(&w).expect("positive width");
            if rational::lt(a.hi(), b.lo()) {
                return Ordering::Less;
            }
            if rational::lt(b.hi(), a.lo()) {
                return Ordering::Greater;
            }
            w = rational::mul_pow2(&w, -16);
        }
    }

    /// Enclosure of `|self - other|` of width at most `width`.
    pub fn distance_enclosure(&self, other: &Self, width: &Rational) -> Result<RationalInterval, ExactError> {
        let half = width / rational::int(2);
        let a = self.real_enclosure(&half)?;
        let b = other.real_enclosure(&half)?;
        Ok(a.sub(&b).abs())
    }

    /// `1 / self`; the minimal polynomial is the reversal.
    pub fn reciprocal(&self) -> Result<Self, AlgebraicError> {
        if let Some(r) = self.as_rational() {
            if r.is_zero() {
                return Err(AlgebraicError::ZeroElement);
            }
            return Ok(Self::from_rational(&r.recip()));
        }
        let rev = self.min_poly.reversed().primitive_part()?;
        let sturm = SturmSequence::new(&rev)?;
        let mut w = self.iso.width();
        loop {
            let e = self.real_enclosure(&w)?;
            if !e.contains_zero() {
                let inv = e.recip()?;
                if sturm.count_in(&inv) == 1 {
                    return Ok(Self::trusted(rev, inv));
                }
            }
            w = rational::mul_pow2(&w, -8);
        }
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.same_number(other)
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{}", rational::fmt_rational(&r)),
            None => write!(f, "root of {} in {}", self.min_poly, self.iso),
        }
    }
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AlgebraicNumber", 4)?;
        st.serialize_field("min_poly", &self.min_poly.to_string())?;
        st.serialize_field("iso", &self.iso)?;
        st.serialize_field("degree", &self.degree())?;
        st.serialize_field("height", &self.height().to_string())?;
        st.end()
    }
}

/// Least-degree rational relation among `1, e, e^2, ...`, as a monic
/// rational polynomial. Gaussian elimination is done incrementally so each
/// new power is reduced against the span of the previous ones.
pub fn minimal_relation(e: &FieldElement) -> Vec<Rational> {
    let m = e.field().degree();
    // (pivot column, reduced vector, combination of powers producing it)
    let mut rows: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut power = FieldElement::one(e.field());
    for d in 0..=m {
        let mut v = power.coords().to_vec();
        let mut comb = vec![Rational::zero(); d + 1];
        comb[d] = Rational::one();
        for (p, rv, rc) in &rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(rv) {
                *x -= &f * y;
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                *x -= &f * y;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => return comb,
            Some(p) => {
                let inv = v[p].recip();
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                for x in comb.iter_mut() {
                    *x *= &inv;
                }
                rows.push((p, v, comb));
            }
        }
        power = &power * e;
    }
    unreachable!("m + 1 vectors in an m-dimensional space are dependent")
}

/// The real algebraic number `e(theta)` under the field's embedding.
pub fn minimal_polynomial(e: &FieldElement) -> AlgebraicNumber {
    if let Some(r) = e.as_rational() {
        return AlgebraicNumber::from_rational(&r);
    }
    let poly = IntPolynomial::from_rational(&minimal_relation(e))
        .primitive_part()
        .expect("relation is nonzero");
    let sturm = SturmSequence::new(&poly).expect("irreducible implies square-free");
    let mut w = rational::rat(1, 256);
    loop {
        let enc = e.enclosure(&w).expect("positive width");
        if sturm.count_in(&enc) == 1 {
            return AlgebraicNumber::trusted(poly, enc);
        }
        w = rational::mul_pow2(&w, -8);
    }
}

/// Characteristic polynomial of a square rational matrix, monic, via the
/// Faddeev-LeVerrier recurrence.
pub fn charpoly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let identity = |i: usize, j: usize| if i == j { Rational::one() } else { Rational::zero() };
    let mut mk: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| identity(i, j)).collect()).collect();
    for k in 1..=n {
        // am = A * M_k
        let am: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(Rational::zero(), |s, t| s + &a[i][t] * &mk[t][j])).collect())
            .collect();
        let trace = (0..n).fold(Rational::zero(), |s, i| s + &am[i][i]);
        let c = -trace / rational::int(k as i64);
        coeffs[n - k] = c.clone();
        mk = (0..n)
            .map(|i| (0..n).map(|j| &am[i][j] + &c * identity(i, j)).collect())
            .collect();
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::field::NumberField;
    use crate::exact::rational::{int, rat};

    fn sqrt2_field() -> crate::algebraic::Field {
        NumberField::parse("[-2,0,1]@[1,2]").unwrap()
    }

    #[test]
    fn one_plus_sqrt2() {
        let k = sqrt2_field();
        let e = FieldElement::new(&k, vec![int(1), int(1)]).unwrap();
        let a = minimal_polynomial(&e);
        assert_eq!(a.min_poly(), &IntPolynomial::from_i64s(&[-1, -2, 1]));
        assert_eq!(a.height(), BigInt::from(2));
        let enc = a.real_enclosure(&rat(1, 100)).unwrap();
        assert!(enc.contains(&rat(241421, 100000)) || enc.contains(&rat(241422, 100000)));
    }

    #[test]
    fn rational_elements() {
        let k = sqrt2_field();
        let a = minimal_polynomial(&FieldElement::from_rational(&k, rat(3, 2)));
        assert_eq!(a.min_poly(), &IntPolynomial::from_i64s(&[-3, 2]));
        assert_eq!(a.height(), BigInt::from(3));
        let t = FieldElement::theta(&k);
        let two = minimal_polynomial(&(&t * &t));
        assert_eq!(two.min_poly(), &IntPolynomial::from_i64s(&[-2, 1]));
        assert_eq!(two.real_enclosure(&rat(1, 10)).unwrap(), RationalInterval::point(int(2)));
    }

    #[test]
    fn sqrt2_enclosure() {
        let a = minimal_polynomial(&FieldElement::theta(&sqrt2_field()));
        let enc = a.real_enclosure(&rat(1, 1000)).unwrap();
        assert!(enc.width() <= rat(1, 1000));
        assert!(enc.is_subset_of(&RationalInterval::new(rat(1414, 1000), rat(14143, 10000)).unwrap()));
    }

    #[test]
    fn negative_embedding_is_respected() {
        let k = NumberField::parse("[-2,0,1]@[-2,-1]").unwrap();
        let a = minimal_polynomial(&FieldElement::theta(&k));
        assert!(a.real_enclosure(&rat(1, 10)).unwrap().hi() < &int(0));
    }

    #[test]
    fn reciprocal_reverses_poly() {
        let k = NumberField::pure_root(3, 2).unwrap();
        let e = FieldElement::new(&k, vec![int(1), int(1), int(0)]).unwrap();
        let a = minimal_polynomial(&e);
        let r = a.reciprocal().unwrap();
        assert_eq!(r.height(), a.height());
        let direct = minimal_polynomial(&e.inverse().unwrap());
        assert!(r.same_number(&direct));
    }

    #[test]
    fn charpoly_of_theta_matrix() {
        let k = NumberField::pure_root(3, 2).unwrap();
        let cp = charpoly(&FieldElement::theta(&k).mul_matrix());
        assert_eq!(cp, vec![int(-2), int(0), int(0), int(1)]);
    }

    #[test]
    fn ordering_of_values() {
        let k = sqrt2_field();
        let s = minimal_polynomial(&FieldElement::theta(&k));
        let r = AlgebraicNumber::from_rational(&rat(3, 2));
        assert_eq!(s.cmp_value(&r), Ordering::Less);
        assert_eq!(r.cmp_value(&s), Ordering::Greater);
        assert_eq!(s.cmp_value(&s.clone()), Ordering::Equal);
    }
}

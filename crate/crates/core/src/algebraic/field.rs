//! Number fields `Q(theta)` with one designated real embedding, and their
//! elements in the power basis `1, theta, ..., theta^(m-1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::AlgebraicError;
use crate::exact::irreducible::is_irreducible;
use crate::exact::rational::{self, Rational};
use crate::exact::roots::{refine_root, SturmSequence};
use crate::exact::upoly::{self, Coeff};
use crate::exact::{ExactError, IntPolynomial, RationalInterval};

/// Refinable enclosure of one real root of an integer polynomial. The
/// tightest interval computed so far is shared between clones.
#[derive(Debug)]
pub(crate) struct RootCache {
    poly: IntPolynomial,
    best: Mutex<RationalInterval>,
}

impl RootCache {
    pub(crate) fn new(poly: IntPolynomial, iso: RationalInterval) -> Self {
        Self { poly, best: Mutex::new(iso) }
    }

    /// An interval of width at most `width / 8` containing the root. It is
    /// an enclosure only; it need not isolate the root.
    pub(crate) fn enclose(&self, width: &Rational) -> Result<RationalInterval, ExactError> {
        if !width.is_positive() {
            return Err(ExactError::NonPositiveWidth);
        }
        let cur = {
            let mut best = self.best.lock().expect("root cache poisoned");
            if best.is_point() {
                return Ok(best.clone());
            }
            // Overshoot the request so nearby requests reuse the result.
            let target = rational::mul_pow2(width, -4);
            if rational::lt(&target, &best.width()) {
                *best = refine_root(&self.poly, &best, &target)?;
            }
            best.clone()
        };
        // Coarsen very tight cached intervals so callers do not pay for
        // precision they did not ask for.
        if rational::mul_pow2(&cur.width(), 12) < *width {
            let mut s = -rational::approx_log2(width) + 5;
            while rational::lt(width, &rational::mul_pow2(&Rational::one(), 5 - s)) {
                s += 1;
            }
            return Ok(cur.round_outward_abs(s));
        }
        Ok(cur)
    }
}

/// `K = Q(theta)` where `theta` is the unique root of `poly` inside the
/// embedding interval.
#[derive(Debug)]
pub struct NumberField {
    poly: IntPolynomial,
    embedding: RationalInterval,
    /// `theta^m = sum reduction[i] theta^i`.
    reduction: Vec<Rational>,
    theta: RootCache,
}

pub type Field = Arc<NumberField>;

impl NumberField {
    /// Builds a field from an irreducible defining polynomial and an interval
    /// isolating the real root used as the embedding.
    pub fn new(poly: IntPolynomial, embedding: RationalInterval) -> Result<Field, AlgebraicError> {
        let poly = poly.primitive_part()?;
        match is_irreducible(&poly)? {
            Some(true) => {}
            Some(false) => return Err(AlgebraicError::NotIrreducible(poly.to_string())),
            None => return Err(AlgebraicError::IrreducibilityUnknown(poly.to_string())),
        }
        let sturm = SturmSequence::new(&poly)?;
        if sturm.count_in(&embedding) != 1 {
            return Err(AlgebraicError::EmbeddingNotIsolating);
        }
        let m = poly.degree().expect("nonzero");
        let lead = Rational::from_integer(poly.leading().expect("nonzero").clone());
        let reduction = poly.coeffs()[..m]
            .iter()
            .map(|c| -Rational::from_integer(c.clone()) / &lead)
            .collect();
        let theta = RootCache::new(poly.clone(), embedding.clone());
        Ok(Arc::new(Self { poly, embedding, reduction, theta }))
    }

    /// `Q` itself, presented as `Q(0)`.
    pub fn rationals() -> Field {
        Self::new(IntPolynomial::from_i64s(&[0, 1]), RationalInterval::point(Rational::zero())).expect("x is irreducible")
    }

    /// `Q(p^(1/m))` with the positive real root; `p` must make `x^m - p`
    /// irreducible.
    pub fn pure_root(m: usize, p: u64) -> Result<Field, AlgebraicError> {
        let poly = IntPolynomial::pure_power(m, &BigInt::from(p));
        let hi = rational::int(p.max(2) as i64);
        Self::new(poly, RationalInterval::new(Rational::one(), hi)?)
    }

    /// Parses `"[-2,0,1]@[1,2]"`, `"root:m:p"`, or `"Q"`.
    pub fn parse(spec: &str) -> Result<Field, AlgebraicError> {
        let spec = spec.trim();
        if spec.eq_ignore_ascii_case("q") || spec == "rationals" {
            return Ok(Self::rationals());
        }
        if let Some(rest) = spec.strip_prefix("root:") {
            let (m, p) = rest
                .split_once(':')
                .ok_or_else(|| AlgebraicError::Parse(format!("expected root:m:p, got '{spec}'")))?;
            let m: usize = m.trim().parse().map_err(|_| AlgebraicError::Parse(format!("bad degree '{m}'")))?;
            let p: u64 = p.trim().parse().map_err(|_| AlgebraicError::Parse(format!("bad radicand '{p}'")))?;
            if m == 0 {
                return Err(AlgebraicError::Parse("degree must be positive".into()));
            }
            return Self::pure_root(m, p);
        }
        let (poly, emb) = spec
            .split_once('@')
            .ok_or_else(|| AlgebraicError::Parse(format!("field spec needs '@embedding': '{spec}'")))?;
        let poly: IntPolynomial = poly.parse()?;
        let emb = parse_interval(emb)?;
        Self::new(poly, emb)
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().expect("nonzero")
    }

    pub fn defining_poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn embedding(&self) -> &RationalInterval {
        &self.embedding
    }

    /// Enclosure of the embedded generator of width at most `width`.
    pub fn theta_enclosure(&self, width: &Rational) -> Result<RationalInterval, ExactError> {
        self.theta.enclose(width)
    }

    /// Enclosure refined from the embedding interval alone, so the result
    /// does not depend on earlier requests.
    pub fn theta_enclosure_canonical(&self, width: &Rational) -> Result<RationalInterval, ExactError> {
        refine_root(&self.poly, &self.embedding, width)
    }

    /// Same defining polynomial and the same embedded root.
    pub fn same_field(&self, other: &NumberField) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        if self.poly != other.poly {
            return false;
        }
        match self.embedding.intersect(&other.embedding) {
            None => false,
            Some(iv) => SturmSequence::new(&self.poly).map(|s| s.count_in(&iv) == 1).unwrap_or(false),
        }
    }

    fn reduce(&self, mut c: Vec<Rational>) -> Vec<Rational> {
        let m = self.degree();
        while c.len() > m {
            let top = c.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let base = c.len() - m;
            for (i, r) in self.reduction.iter().enumerate() {
                c[base + i] += &top * r;
            }
        }
        c.resize(m, Rational::zero());
        c
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.poly, self.embedding)
    }
}

pub(crate) fn parse_interval(s: &str) -> Result<RationalInterval, AlgebraicError> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| AlgebraicError::Parse(format!("interval must look like [lo,hi]: '{s}'")))?;
    let (lo, hi) = inner
        .split_once(',')
        .ok_or_else(|| AlgebraicError::Parse(format!("interval needs two endpoints: '{s}'")))?;
    Ok(RationalInterval::new(rational::parse_rational(lo)?, rational::parse_rational(hi)?)?)
}

/// An element of a number field as power-basis coordinates.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field.same_field(&other.field)
    }
}

impl FieldElement {
    pub fn new(field: &Field, coords: Vec<Rational>) -> Result<Self, AlgebraicError> {
        if coords.len() != field.degree() {
            return Err(AlgebraicError::WrongCoordinateCount { expected: field.degree(), got: coords.len() });
        }
        Ok(Self { field: field.clone(), coords })
    }

    /// Builds an element from a polynomial in `theta` of any length.
    pub fn from_poly(field: &Field, c: Vec<Rational>) -> Self {
        Self { field: field.clone(), coords: field.reduce(c) }
    }

    pub fn from_rational(field: &Field, r: Rational) -> Self {
        Self::from_poly(field, vec![r])
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_rational(field, Rational::zero())
    }

    pub fn one(field: &Field) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn theta(field: &Field) -> Self {
        Self::from_poly(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coords[1..].iter().all(|c| c.is_zero()).then(|| self.coords[0].clone())
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraicError> {
        if self.field.same_field(&other.field) {
            Ok(())
        } else {
            Err(AlgebraicError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraicError> {
        self.check_same(other)?;
        Ok(self.add_c(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraicError> {
        self.check_same(other)?;
        Ok(self.mul_c(other))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(&self.field);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_c(&base);
            }
            base = base.mul_c(&base);
            e >>= 1;
        }
        result
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the defining polynomial.
    pub fn inverse(&self) -> Result<Self, AlgebraicError> {
        if self.is_zero() {
            return Err(AlgebraicError::ZeroElement);
        }
        let e = upoly::trim(self.coords.clone());
        let f = self.field.poly.to_rational();
        let (g, s, _) = upoly::ext_gcd(&e, &f, &Rational::one());
        // f is irreducible, so the gcd is 1.
        debug_assert_eq!(g.len(), 1);
        Ok(Self::from_poly(&self.field, s))
    }

    /// Matrix of multiplication by this element; column `j` holds the
    /// coordinates of `self * theta^j`.
    pub fn mul_matrix(&self) -> Vec<Vec<Rational>> {
        let m = self.field.degree();
        let mut cols = Vec::with_capacity(m);
        let mut cur = self.clone();
        let theta = Self::theta(&self.field);
        for _ in 0..m {
            cols.push(cur.coords.clone());
            cur = cur.mul_c(&theta);
        }
        (0..m).map(|i| (0..m).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Enclosure of the embedded real value, with `theta` refined to
    /// `theta_width`.
    pub fn enclosure(&self, theta_width: &Rational) -> Result<RationalInterval, ExactError> {
        if let Some(r) = self.as_rational() {
            return Ok(RationalInterval::point(r));
        }
        Ok(self.enclosure_at(&self.field.theta_enclosure(theta_width)?))
    }

    /// Enclosure of the value given an enclosure of `theta`.
    pub fn enclosure_at(&self, theta: &RationalInterval) -> RationalInterval {
        if let Some(r) = self.as_rational() {
            return RationalInterval::point(r);
        }
        let mut acc = RationalInterval::point(Rational::zero());
        for c in self.coords.iter().rev() {
            acc = acc.mul(theta).add(&RationalInterval::point(c.clone()));
        }
        acc
    }
}

impl Coeff for FieldElement {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.field)
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        Self { field: self.field.clone(), coords }
    }
    fn sub_c(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        Self { field: self.field.clone(), coords }
    }
    fn mul_c(&self, o: &Self) -> Self {
        let prod = upoly::mul(&upoly::trim(self.coords.clone()), &upoly::trim(o.coords.clone()));
        Self::from_poly(&self.field, prod)
    }
    fn inv_c(&self) -> Self {
        self.inverse().expect("inverse of nonzero element")
    }
    fn neg_c(&self) -> Self {
        Self { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
    fn scale_int(&self, k: i64) -> Self {
        let k = rational::int(k);
        Self { field: self.field.clone(), coords: self.coords.iter().map(|c| c * &k).collect() }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> FieldElement {
        self.add_c(rhs)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> FieldElement {
        self.sub_c(rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> FieldElement {
        self.mul_c(rhs)
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_c()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

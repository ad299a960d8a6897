//! Real root isolation with Sturm sequences and bisection refinement.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::interval::RationalInterval;
use super::poly::IntPolynomial;
use super::rational::{self, Rational};
use super::upoly;
use super::ExactError;

/// Sturm chain of a square-free polynomial. Members are kept primitive
/// (positive rescaling only), so sign patterns match the textbook chain.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> Result<Self, ExactError> {
        if p.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(positive_primitive(&d));
        }
        loop {
            let n = chain.len();
            if n < 2 {
                break;
            }
            let r = upoly::rem(&chain[n - 2].to_rational(), &chain[n - 1].to_rational());
            if r.is_empty() {
                break;
            }
            let neg: Vec<Rational> = upoly::neg(&r);
            chain.push(positive_primitive(&IntPolynomial::from_rational(&neg)));
        }
        if chain.last().and_then(|l| l.degree()).unwrap_or(0) > 0 {
            return Err(ExactError::NotSquarefree);
        }
        Ok(Self { chain })
    }

    pub fn polynomial(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    fn variations_of(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    pub fn variations(&self, x: &Rational) -> usize {
        Self::variations_of(self.chain.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_infinity(&self, pos: bool) -> usize {
        Self::variations_of(self.chain.iter().map(|p| p.sign_at_infinity(pos)))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a) - self.variations(b)
    }

    /// Number of distinct roots in the closed interval.
    pub fn count_in(&self, iv: &RationalInterval) -> usize {
        let at_lo = usize::from(self.chain[0].sign_at(iv.lo()) == 0);
        if iv.is_point() {
            return at_lo;
        }
        self.count_half_open(iv.lo(), iv.hi()) + at_lo
    }
}

fn positive_primitive(p: &IntPolynomial) -> IntPolynomial {
    let g = p.content();
    IntPolynomial::new(p.coeffs().iter().map(|c| c / &g).collect())
}

/// Integer `B` with every real root strictly inside `(-B, B)`.
pub fn root_bound(p: &IntPolynomial) -> BigInt {
    let lead = p.leading().expect("nonzero polynomial").abs();
    let m = p.coeffs()[..p.coeffs().len() - 1].iter().map(|c| c.abs()).max().unwrap_or_default();
    BigInt::from(2) + m.div_ceil(&lead)
}

/// Picks a point strictly inside `(a, b)` where `p` does not vanish.
fn split_point(p: &IntPolynomial, a: &Rational, b: &Rational) -> Rational {
    let w = b - a;
    let mut t = rational::rat(1, 2);
    loop {
        let m = a + &w * &t;
        if p.sign_at(&m) != 0 {
            return m;
        }
        // Finitely many roots, so this walk terminates.
        t = (t + rational::int(1)) / rational::int(2);
        if t >= rational::int(1) {
            t = rational::rat(1, 3);
        }
    }
}

/// Isolating intervals for the real roots of a square-free polynomial, in
/// increasing order. Intervals are pairwise disjoint and their endpoints are
/// never roots.
pub fn isolate_real_roots(p: &IntPolynomial) -> Result<Vec<RationalInterval>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let sturm = SturmSequence::new(p)?;
    let b = Rational::from_integer(root_bound(p));
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count_half_open(&lo, &hi);
        match n {
            0 => {}
            1 => out.push(RationalInterval::new(lo, hi)?),
            _ => {
                let m = split_point(p, &lo, &hi);
                // Push the right half first so the left half is processed next.
                stack.push((m.clone(), hi));
                stack.push((lo, m));
            }
        }
    }
    out.sort_by(|x, y| x.lo().cmp(y.lo()));
    // Neighbours may share an endpoint; shrink the left one until they separate.
    for i in 0..out.len().saturating_sub(1) {
        while out[i].hi() >= out[i + 1].lo() {
            out[i] = bisect_once(p, &out[i])?;
        }
    }
    Ok(out)
}

fn bisect_once(p: &IntPolynomial, iv: &RationalInterval) -> Result<RationalInterval, ExactError> {
    let slo = p.sign_at(iv.lo());
    let m = iv.midpoint();
    let sm = p.sign_at(&m);
    if sm == 0 {
        return Ok(RationalInterval::point(m));
    }
    if sm == slo {
        RationalInterval::new(m, iv.hi().clone())
    } else {
        RationalInterval::new(iv.lo().clone(), m)
    }
}

/// Shrinks an interval bracketing one simple root until its width is at most
/// `width`. Bisection runs on the dyadic grid `2^-s`, so the result has
/// compact endpoints unless it touches the original bounds.
pub fn refine_root(p: &IntPolynomial, iso: &RationalInterval, width: &Rational) -> Result<RationalInterval, ExactError> {
    if !width.is_positive() {
        return Err(ExactError::NonPositiveWidth);
    }
    let (lo, hi) = (iso.lo(), iso.hi());
    let slo = p.sign_at(lo);
    if slo == 0 {
        return Ok(RationalInterval::point(lo.clone()));
    }
    let shi = p.sign_at(hi);
    if shi == 0 {
        return Ok(RationalInterval::point(hi.clone()));
    }
    if slo == shi {
        return Err(ExactError::NoSignChange);
    }
    if rational::le(&iso.width(), width) {
        return Ok(iso.clone());
    }
    // Smallest s with 2^-s <= width.
    let mut s = (-rational::approx_log2(width)).max(0) as u64;
    while rational::lt(width, &rational::mul_pow2(&Rational::one(), -(s as i64))) {
        s += 1;
    }
    let scale = rational::pow2(s);
    let mut a = rational::floor(&(lo * Rational::from_integer(scale.clone())));
    let mut b = rational::ceil(&(hi * Rational::from_integer(scale.clone())));
    let (mut a_orig, mut b_orig) = (true, true);
    while &b - &a > BigInt::one() {
        let m: BigInt = (&a + &b) >> 1u32;
        let sm = p.sign_at_dyadic(&m, s);
        if sm == 0 {
            return Ok(RationalInterval::point(Rational::new(m, scale)));
        }
        if sm == slo {
            a = m;
            a_orig = false;
        } else {
            b = m;
            b_orig = false;
        }
    }
    let new_lo = if a_orig { lo.clone() } else { Rational::new(a, scale.clone()) };
    let new_hi = if b_orig { hi.clone() } else { Rational::new(b, scale) };
    RationalInterval::new(new_lo, new_hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn sqrt2_has_two_roots() {
        let roots = isolate_real_roots(&poly(&[-2, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi() < roots[1].lo());
        assert!(roots[0].contains(&rat(-1414, 1000)) || roots[0].contains(&rat(-1415, 1000)));
        assert!(roots[1].contains(&rat(1414, 1000)) || roots[1].contains(&rat(1415, 1000)));
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&poly(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn cube_root_of_two() {
        let roots = isolate_real_roots(&poly(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(roots.len(), 1);
        let r = refine_root(&poly(&[-2, 0, 0, 1]), &roots[0], &rat(1, 2)).unwrap();
        assert!(r.is_subset_of(&RationalInterval::new(int(1), int(2)).unwrap()));
    }

    #[test]
    fn not_squarefree_rejected() {
        assert_eq!(isolate_real_roots(&poly(&[1, -2, 1])).unwrap_err(), ExactError::NotSquarefree);
        assert_eq!(isolate_real_roots(&IntPolynomial::zero()).unwrap_err(), ExactError::ZeroPolynomial);
    }

    #[test]
    fn refine_sqrt2() {
        let p = poly(&[-2, 0, 1]);
        let r = refine_root(&p, &RationalInterval::new(int(1), int(2)).unwrap(), &rat(1, 1000)).unwrap();
        assert!(r.width() <= rat(1, 1000));
        assert!(r.contains(&rat(141421356, 100000000)));
    }

    #[test]
    fn refine_exact_rational_root() {
        let r = refine_root(&poly(&[-2, 1]), &RationalInterval::new(int(1), int(3)).unwrap(), &rat(1, 10)).unwrap();
        assert_eq!(r, RationalInterval::point(int(2)));
    }

    #[test]
    fn refine_without_sign_change() {
        let e = refine_root(&poly(&[-2, 0, 1]), &RationalInterval::new(int(3), int(4)).unwrap(), &rat(1, 1000));
        assert_eq!(e.unwrap_err(), ExactError::NoSignChange);
    }

    #[test]
    fn adjacent_rational_roots_are_separated() {
        // (x-1)(x-2)(x-3): roots could land on shared split points.
        let p = poly(&[-6, 11, -6, 1]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        for w in roots.windows(2) {
            assert!(w[0].hi() < w[1].lo());
        }
        for (iv, r) in roots.iter().zip([1, 2, 3]) {
            assert!(iv.contains(&int(r)));
        }
    }
}

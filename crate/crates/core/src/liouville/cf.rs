//! Continued fractions: prescribed partial quotients, the strong
//! construction, and certified expansion of enclosed reals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::series::Convergent;
use super::LiouvilleError;
use crate::exact::rational::{self, Rational};
use crate::exact::RationalInterval;

/// A continued fraction prefix `[a_0; a_1, ..., a_n]` of an irrational
/// number whose remaining quotients are unknown.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CFNumber {
    #[serde(serialize_with = "ser_bigs")]
    quotients: Vec<BigInt>,
    #[serde(skip)]
    p: Vec<BigInt>,
    #[serde(skip)]
    q: Vec<BigInt>,
}

fn ser_bigs<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl CFNumber {
    pub fn new(quotients: Vec<BigInt>) -> Result<Self, LiouvilleError> {
        if quotients.is_empty() {
            return Err(LiouvilleError::TooFewEntries);
        }
        if quotients[0].is_negative() {
            return Err(LiouvilleError::Parse("a_0 must be non-negative".into()));
        }
        if let Some(i) = quotients.iter().skip(1).position(|a| !a.is_positive()) {
            return Err(LiouvilleError::Parse(format!("partial quotient a_{} must be positive", i + 1)));
        }
        let (mut p, mut q) = (Vec::with_capacity(quotients.len()), Vec::with_capacity(quotients.len()));
        let (mut p1, mut p2) = (BigInt::one(), BigInt::zero());
        let (mut q1, mut q2) = (BigInt::zero(), BigInt::one());
        for a in &quotients {
            let pn = a * &p1 + &p2;
            let qn = a * &q1 + &q2;
            p2 = std::mem::replace(&mut p1, pn.clone());
            q2 = std::mem::replace(&mut q1, qn.clone());
            p.push(pn);
            q.push(qn);
        }
        Ok(Self { quotients, p, q })
    }

    pub fn from_u64s(a: &[u64]) -> Result<Self, LiouvilleError> {
        Self::new(a.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    /// `q_0, ..., q_n`.
    pub fn denominators(&self) -> &[BigInt] {
        &self.q
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.p
    }

    /// Index of the last materialized convergent.
    pub fn last_index(&self) -> usize {
        self.quotients.len() - 1
    }

    /// `p_k / q_k`, with the gap `[1/(q_k(q_{k+1}+q_k)), 1/(q_k q_{k+1})]`
    /// valid for any irrational continuation. Needs `k < last_index()`.
    pub fn convergent(&self, k: usize) -> Result<Convergent, LiouvilleError> {
        if k >= self.last_index() {
            return Err(LiouvilleError::InvalidIndex(k));
        }
        let (qk, qk1) = (&self.q[k], &self.q[k + 1]);
        let lo = Rational::new(BigInt::one(), qk * (qk1 + qk));
        let hi = Rational::new(BigInt::one(), qk * qk1);
        Ok(Convergent { k, value: Rational::new(self.p[k].clone(), qk.clone()), gap: RationalInterval::new(lo, hi)? })
    }

    /// Enclosure of every irrational number with this prefix: between
    /// `p_n/q_n` and `(p_n + p_{n-1})/(q_n + q_{n-1})`.
    pub fn enclosure(&self) -> RationalInterval {
        let n = self.last_index();
        let a = Rational::new(self.p[n].clone(), self.q[n].clone());
        let (pp, qp) = if n == 0 { (BigInt::one(), BigInt::zero()) } else { (self.p[n - 1].clone(), self.q[n - 1].clone()) };
        let b = Rational::new(&self.p[n] + pp, &self.q[n] + qp);
        RationalInterval::spanning(a, b)
    }

    /// Omega interval of convergent `k` from its gap:
    /// `[-log2(gap.hi), -log2(gap.lo)] / log2(q_k)`. Needs `q_k >= 2`.
    pub fn omega_measured(&self, k: usize) -> Result<RationalInterval, LiouvilleError> {
        let c = self.convergent(k)?;
        omega_from_gap(&c)
    }
}

/// `-log|gap| / log q` as a certified interval.
pub fn omega_from_gap(c: &Convergent) -> Result<RationalInterval, LiouvilleError> {
    let q = c.value.denom().clone();
    if q <= BigInt::one() {
        return Err(LiouvilleError::InvalidIndex(c.k));
    }
    let lq = crate::exact::log::log2_int(&q);
    let lg = crate::exact::log::log2_interval(&c.gap)?.neg();
    Ok(lg.div(&lq)?)
}

/// Partial quotients `a_0 = 0`, `a_1 = 2`, `a_{k+1} = q_k^{n(k)}`, so that
/// `q_{k+1} > q_k^{n(k)}` for every `k >= 1`. `count` quotients follow `a_0`.
pub fn build_strong_cf(n: impl Fn(usize) -> u32, count: usize) -> Result<CFNumber, LiouvilleError> {
    if count < 2 {
        return Err(LiouvilleError::TooFewEntries);
    }
    let mut a = vec![BigInt::zero(), BigInt::from(2)];
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::from(2));
    for k in 1..count {
        let e = n(k);
        if u64::from(e).saturating_mul(q.bits()) > 1 << 30 {
            return Err(LiouvilleError::TooLarge);
        }
        let next_a = num_traits::pow(q.clone(), e as usize);
        let next_q = &next_a * &q + &q_prev;
        a.push(next_a);
        q_prev = std::mem::replace(&mut q, next_q);
    }
    CFNumber::new(a)
}

/// The first `count` partial quotients of a real given by a refinable
/// enclosure. A quotient is emitted only when both ends of the enclosure of
/// the current complete quotient share their integer part; otherwise
/// `refine(width)` is asked for a tighter enclosure, at most `budget` times.
pub fn cf_expansion<F>(mut refine: F, count: usize, budget: usize) -> Result<Vec<BigInt>, LiouvilleError>
where
    F: FnMut(&Rational) -> Result<RationalInterval, LiouvilleError>,
{
    let mut width = rational::rat(1, 1 << 20);
    let mut x = refine(&width)?;
    let mut rounds = 0;
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    // Convergent recurrence state: x = (p1 t + p2) / (q1 t + q2) for the
    // complete quotient t.
    let (mut p1, mut p2) = (BigInt::one(), BigInt::zero());
    let (mut q1, mut q2) = (BigInt::zero(), BigInt::one());
    while out.len() < count {
        // t = (q2 x - p2) / (p1 - q1 x)
        let num = x.scale(&rational::from_big(q2.clone())).sub(&RationalInterval::point(rational::from_big(p2.clone())));
        let den = RationalInterval::point(rational::from_big(p1.clone())).sub(&x.scale(&rational::from_big(q1.clone())));
        let t = if den.contains_zero() { None } else { num.div(&den).ok() };
        match t {
            Some(t) if rational::floor(t.lo()) == rational::floor(t.hi()) => {
                let a = rational::floor(t.lo());
                let pn = &a * &p1 + &p2;
                let qn = &a * &q1 + &q2;
                p2 = std::mem::replace(&mut p1, pn);
                q2 = std::mem::replace(&mut q1, qn);
                out.push(a);
            }
            _ => {
                rounds += 1;
                if rounds > budget {
                    return Err(LiouvilleError::RefinementBudgetExceeded);
                }
                width = rational::mul_pow2(&rational::min(&x.width(), &width), -32);
                x = refine(&width)?;
            }
        }
    }
    debug_assert!(out.iter().skip(1).all(|a| a.is_positive()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{refine_root, IntPolynomial};
    use crate::liouville::series::SeriesNumber;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn strong_cf_fixture() {
        let cf = build_strong_cf(|k| k as u32, 4).unwrap();
        assert_eq!(cf.quotients(), ints(&[0, 2, 2, 25, 2048383]).as_slice());
        assert_eq!(&cf.denominators()[1..], ints(&[2, 5, 127, 260144646]).as_slice());
        assert!(BigInt::from(260144646) > num_traits::pow(BigInt::from(127), 3));
        let cf2 = build_strong_cf(|_| 2, 3).unwrap();
        assert_eq!(cf2.denominators()[2], BigInt::from(9));
    }

    #[test]
    fn determinant_identity() {
        let cf = build_strong_cf(|k| k as u32, 4).unwrap();
        let (p, q) = (cf.numerators(), cf.denominators());
        for k in 1..p.len() {
            let det = &p[k] * &q[k - 1] - &p[k - 1] * &q[k];
            assert_eq!(det.abs(), BigInt::one());
        }
    }

    #[test]
    fn expansion_of_liouville_constant() {
        let l = SeriesNumber::liouville_constant();
        let a = cf_expansion(|w| l.enclosure(w), 2, 16).unwrap();
        assert_eq!(a, ints(&[0, 9]));
    }

    #[test]
    fn expansion_of_quadratic_irrationals() {
        let golden = IntPolynomial::from_i64s(&[-1, -1, 1]);
        let iso = RationalInterval::new(rational::int(1), rational::int(2)).unwrap();
        let a = cf_expansion(|w| Ok(refine_root(&golden, &iso, w)?), 10, 64).unwrap();
        assert_eq!(a, vec![BigInt::one(); 10]);
        let sqrt2 = IntPolynomial::from_i64s(&[-2, 0, 1]);
        let a = cf_expansion(|w| Ok(refine_root(&sqrt2, &iso, w)?), 8, 64).unwrap();
        assert_eq!(a[0], BigInt::one());
        assert!(a[1..].iter().all(|x| x == &BigInt::from(2)));
    }

    #[test]
    fn rational_input_hits_budget() {
        let third = RationalInterval::point(rational::rat(1, 3));
        let e = cf_expansion(|_| Ok(third.clone()), 5, 4).unwrap_err();
        assert_eq!(e, LiouvilleError::RefinementBudgetExceeded);
    }

    #[test]
    fn gaps_bracket_prefix_enclosure() {
        let cf = CFNumber::from_u64s(&[1, 2, 2, 2, 2, 2]).unwrap();
        let xi = cf.enclosure();
        for k in 0..cf.last_index() {
            let c = cf.convergent(k).unwrap();
            let d = xi.sub(&RationalInterval::point(c.value.clone())).abs();
            assert!(d.is_subset_of(&c.gap), "k = {k}");
        }
    }
}

//! Witness sequences `(p_k/q_k, omega_k)` and the growth classifiers.

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde::Serialize;

use super::cf::CFNumber;
use super::series::{Convergent, SeriesNumber};
use super::LiouvilleError;
use crate::exact::log::compare_power;
use crate::exact::rational::{self, Rational};
use crate::exact::RationalInterval;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessEntry {
    pub convergent: Convergent,
    pub omega: RationalInterval,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub entries: Vec<WitnessEntry>,
}

impl Witness {
    pub fn from_series(s: &SeriesNumber, ks: &[usize]) -> Result<Self, LiouvilleError> {
        let entries = ks
            .iter()
            .map(|&k| Ok(WitnessEntry { convergent: s.convergent(k)?, omega: s.omega_measured(k)? }))
            .collect::<Result<Vec<_>, LiouvilleError>>()?;
        Ok(Self { entries })
    }

    pub fn from_cf(cf: &CFNumber, ks: &[usize]) -> Result<Self, LiouvilleError> {
        let entries = ks
            .iter()
            .map(|&k| Ok(WitnessEntry { convergent: cf.convergent(k)?, omega: cf.omega_measured(k)? }))
            .collect::<Result<Vec<_>, LiouvilleError>>()?;
        Ok(Self { entries })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassVerdict {
    pub class_name: String,
    #[serde(rename = "C", serialize_with = "rational::serialize")]
    pub c: Rational,
    pub passes: bool,
    pub first_failure_index: Option<usize>,
}

impl ClassVerdict {
    fn new(class_name: String, c: Rational, first_failure_index: Option<usize>) -> Self {
        Self { class_name, c, passes: first_failure_index.is_none(), first_failure_index }
    }
}

/// Rational `(lo, hi)` with `lo <= t^(1+eps) <= hi` and `hi - lo` shrinking
/// with `bits`. Exact when `eps` is an integer.
fn power_bounds(t: &Rational, eps: &Rational, bits: u64) -> (Rational, Rational) {
    let b = eps.denom().magnitude().clone();
    let e = eps.numer().magnitude() + &b;
    let (b, e): (u32, usize) = (u32::try_from(&b).expect("small denominator"), usize::try_from(&e).expect("small exponent"));
    if b == 1 {
        let v = num_traits::pow(t.clone(), e);
        return (v.clone(), v);
    }
    // t^(e/b) = (P^e Q^(e(b-1)))^(1/b) / Q^e for t = P/Q.
    let p = t.numer().magnitude();
    let q = t.denom().magnitude();
    let x: BigUint = num_traits::pow(p.clone(), e) * num_traits::pow(q.clone(), e * (b as usize - 1)) << (bits * u64::from(b));
    let den = BigInt::from(num_traits::pow(q.clone(), e)) << bits;
    let lo = Rational::new(BigInt::from(rational::floor_root(&x, b)), den.clone());
    let hi = Rational::new(BigInt::from(rational::ceil_root(&x, b)), den);
    (lo, hi)
}

/// Decides `h1 <= h0^(c * t^(1+eps))`.
fn within_allowed(h0: &BigInt, h1: &BigInt, c: &Rational, t: &Rational, eps: &Rational) -> Result<bool, LiouvilleError> {
    let (h0, h1) = (h0.magnitude(), h1.magnitude());
    let mut bits = 64;
    loop {
        let (lo, hi) = power_bounds(t, eps, bits);
        if compare_power(h1, h0, &(c * &lo))?.is_le() {
            return Ok(true);
        }
        if compare_power(h1, h0, &(c * &hi))?.is_gt() {
            return Ok(false);
        }
        bits *= 2;
        if bits > 1 << 16 {
            return Err(LiouvilleError::RefinementBudgetExceeded);
        }
    }
}

/// `L_eps` growth test: every consecutive pair of the witness must satisfy
/// `H_{n+1} <= H_n^(C * t^(1+eps))` with `t` the upper end of entry `n`'s
/// omega interval. The failure index is the `k` of the pair's first entry.
pub fn classify_witness(w: &Witness, c: &Rational, eps: &Rational) -> Result<ClassVerdict, LiouvilleError> {
    if w.entries.len() < 2 {
        return Err(LiouvilleError::TooFewEntries);
    }
    if !c.is_positive() {
        return Err(LiouvilleError::NonPositiveConstant);
    }
    if eps.is_negative() {
        return Err(LiouvilleError::NegativeEpsilon);
    }
    let mut failure = None;
    for pair in w.entries.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if !within_allowed(&a.convergent.height(), &b.convergent.height(), c, a.omega.hi(), eps)? {
            failure = Some(a.convergent.k);
            break;
        }
    }
    Ok(ClassVerdict::new(format!("L_epsilon({})", rational::fmt_rational(eps)), c.clone(), failure))
}

/// `q_{k+1} > q_k^n` for every materialized `k > big_n`. At least one such
/// pair must exist.
pub fn strong_prefix_check(cf: &CFNumber, n: u32, big_n: usize) -> Result<ClassVerdict, LiouvilleError> {
    let q = cf.denominators();
    if cf.last_index() < big_n + 2 {
        return Err(LiouvilleError::TooFewEntries);
    }
    let failure = (big_n + 1..cf.last_index()).find(|&k| q[k + 1] <= num_traits::pow(q[k].clone(), n as usize));
    Ok(ClassVerdict::new("strong_prefix".into(), Rational::from_integer(BigInt::from(n)), failure))
}

/// Finite evidence for unbounded omega: the lower ends of the omega
/// intervals strictly increase and the last one exceeds `threshold`.
pub fn liouville_prefix_check(w: &Witness, threshold: &Rational) -> Result<ClassVerdict, LiouvilleError> {
    if w.entries.len() < 2 {
        return Err(LiouvilleError::TooFewEntries);
    }
    let mut failure = w.entries.windows(2).find(|p| p[1].omega.lo() <= p[0].omega.lo()).map(|p| p[0].convergent.k);
    if failure.is_none() {
        let last = w.entries.last().expect("nonempty");
        if last.omega.lo() <= threshold {
            failure = Some(last.convergent.k);
        }
    }
    Ok(ClassVerdict::new("liouville_prefix".into(), threshold.clone(), failure))
}

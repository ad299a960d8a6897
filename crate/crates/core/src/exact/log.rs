//! Certified binary logarithms and powers with rational exponents.
//!
//! Exponent comparisons such as `x <= b^(N/D)` are first attempted with
//! log enclosures and only fall back to exact big-integer powers when the
//! enclosures overlap.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::interval::RationalInterval;
use super::rational::{self, Rational};
use super::ExactError;

/// Fractional bits produced by the squaring method.
const FRAC_BITS: u32 = 52;
/// Fixed-point working precision for the squaring method.
const WORK_BITS: u64 = 160;
/// Refuse exact power comparisons whose operands would exceed this many bits.
const MAX_POWER_BITS: u64 = 1 << 28;

/// Enclosure of `log2(x)` for `x` in `[1, 2^64)`.
fn log2_small(u: &BigUint) -> (Rational, Rational) {
    debug_assert!(!u.is_zero());
    let e = u.bits() - 1;
    // y = u / 2^e in [1, 2), held as y * 2^WORK_BITS.
    let mut ylo: BigUint = u << (WORK_BITS - e);
    let mut yhi = ylo.clone();
    let one_w: BigUint = BigUint::one() << WORK_BITS;
    let two_w: BigUint = BigUint::one() << (WORK_BITS + 1);
    let mut acc = BigUint::zero();
    let mut k = 0u32;
    for _ in 0..FRAC_BITS {
        ylo = (&ylo * &ylo) >> WORK_BITS;
        let sq = &yhi * &yhi;
        yhi = (&sq >> WORK_BITS) + if (&sq % &one_w).is_zero() { 0u32 } else { 1u32 };
        if ylo >= two_w {
            acc = (acc << 1) + 1u32;
            ylo >>= 1;
            yhi = (&yhi >> 1) + (&yhi & BigUint::one());
        } else if yhi < two_w {
            acc <<= 1;
        } else {
            break;
        }
        k += 1;
    }
    // log2(y) lies in [acc / 2^k, (acc + 1) / 2^k].
    let base = Rational::from_integer(BigInt::from(e));
    let denom = BigInt::one() << k;
    let lo = &base + Rational::new(BigInt::from(acc.clone()), denom.clone());
    let hi = &base + Rational::new(BigInt::from(acc) + 1, denom);
    (lo, hi)
}

/// Certified enclosure of `log2(n)` for a positive integer.
pub fn log2_uint(n: &BigUint) -> RationalInterval {
    assert!(!n.is_zero(), "log2 of zero");
    let b = n.bits();
    if b <= 64 {
        let (lo, hi) = log2_small(n);
        return RationalInterval::spanning(lo, hi);
    }
    let s = b - 64;
    let m: BigUint = n >> s;
    let exact = (&m << s) == *n;
    let shift = Rational::from_integer(BigInt::from(s));
    let (lo, _) = log2_small(&m);
    let (_, hi) = if exact { log2_small(&m) } else { log2_small(&(&m + 1u32)) };
    RationalInterval::spanning(&shift + lo, &shift + hi)
}

pub fn log2_int(n: &BigInt) -> RationalInterval {
    assert!(n.is_positive(), "log2 of non-positive integer");
    log2_uint(n.magnitude())
}

/// Certified enclosure of `log2(r)` for a positive rational.
pub fn log2_rational(r: &Rational) -> Result<RationalInterval, ExactError> {
    if !r.is_positive() {
        return Err(ExactError::NonPositiveLogArgument);
    }
    let n = log2_int(r.numer());
    let d = log2_int(r.denom());
    Ok(n.sub(&d))
}

/// Certified enclosure of `{ log2(x) : x in iv }` for a positive interval.
pub fn log2_interval(iv: &RationalInterval) -> Result<RationalInterval, ExactError> {
    let lo = log2_rational(iv.lo())?;
    let hi = log2_rational(iv.hi())?;
    Ok(RationalInterval::spanning(lo.lo().clone(), hi.hi().clone()))
}

/// Lower and upper rational bounds on `2^t`.
fn exp2_bounds(t: &Rational) -> (Rational, Rational) {
    const B: i64 = 48;
    let f = rational::floor(t);
    let g = t - Rational::from_integer(f.clone());
    let scale = rational::pow2(B as u64);
    let y_at = |k: &BigInt| Rational::one() + Rational::new(k.clone(), scale.clone());
    // Largest k with log2(1 + k/2^B) certainly <= g.
    let (mut a, mut b) = (BigInt::zero(), scale.clone());
    while &b - &a > BigInt::one() {
        let m: BigInt = (&a + &b) >> 1u32;
        if log2_rational(&y_at(&m)).expect("positive").hi() <= &g {
            a = m;
        } else {
            b = m;
        }
    }
    let lo_y = y_at(&a);
    // Smallest k with log2(1 + k/2^B) certainly >= g.
    let (mut a2, mut b2) = (BigInt::zero(), scale.clone());
    if log2_rational(&y_at(&a2)).expect("positive").lo() >= &g {
        b2 = a2.clone();
    } else {
        while &b2 - &a2 > BigInt::one() {
            let m: BigInt = (&a2 + &b2) >> 1u32;
            if log2_rational(&y_at(&m)).expect("positive").lo() >= &g {
                b2 = m;
            } else {
                a2 = m;
            }
        }
    }
    let hi_y = y_at(&b2);
    let fi: i64 = i64::try_from(&f).expect("exponent within i64");
    (rational::mul_pow2(&lo_y, fi), rational::mul_pow2(&hi_y, fi))
}

/// Certified enclosure of `{ 2^t : t in iv }`.
pub fn exp2_interval(iv: &RationalInterval) -> RationalInterval {
    let (lo, _) = exp2_bounds(iv.lo());
    let (_, hi) = exp2_bounds(iv.hi());
    RationalInterval::spanning(lo, hi)
}

/// Compares `x` with `base^e` for integers `x, base >= 1` and rational `e >= 0`.
pub fn compare_power(x: &BigUint, base: &BigUint, e: &Rational) -> Result<Ordering, ExactError> {
    assert!(!x.is_zero() && !base.is_zero());
    if e.is_negative() {
        return Err(ExactError::NegativeExponent);
    }
    if base.is_one() || e.is_zero() {
        return Ok(x.cmp(&BigUint::one()));
    }
    let lx = log2_uint(x);
    let rhs = log2_uint(base).scale(e);
    if rational::lt(lx.hi(), rhs.lo()) {
        return Ok(Ordering::Less);
    }
    if rational::lt(rhs.hi(), lx.lo()) {
        return Ok(Ordering::Greater);
    }
    // Overlap: settle with x^D versus base^N.
    let n = e.numer().magnitude().clone();
    let d = e.denom().magnitude().clone();
    let nb: u64 = (&n * base.bits()).try_into().unwrap_or(u64::MAX);
    let db: u64 = (&d * x.bits()).try_into().unwrap_or(u64::MAX);
    if nb > MAX_POWER_BITS || db > MAX_POWER_BITS {
        return Err(ExactError::ExponentTooLarge);
    }
    let n: u32 = (&n).try_into().map_err(|_| ExactError::ExponentTooLarge)?;
    let d: u32 = (&d).try_into().map_err(|_| ExactError::ExponentTooLarge)?;
    Ok(num_traits::pow(x.clone(), d as usize).cmp(&num_traits::pow(base.clone(), n as usize)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat, to_f64};

    fn check_log(n: u64) {
        let iv = log2_uint(&BigUint::from(n));
        let truth = (n as f64).log2();
        assert!(to_f64(iv.lo()) <= truth + 1e-12 && truth - 1e-12 <= to_f64(iv.hi()), "n = {n}: {iv}");
        assert!(iv.width() <= rat(1, 1 << 40));
    }

    #[test]
    fn small_logs_enclose_truth() {
        for n in [1u64, 2, 3, 5, 10, 1000, 5000, 65535, 65536, u64::MAX] {
            check_log(n);
        }
    }

    #[test]
    fn powers_of_two_are_tight() {
        let iv = log2_uint(&(BigUint::one() << 1000u32));
        assert!(iv.contains(&int(1000)));
    }

    #[test]
    fn big_log_via_power_test() {
        // log2(10^720) = 720 log2(10); check against 10^720 vs 2^k.
        let n = num_traits::pow(BigUint::from(10u32), 720);
        let iv = log2_uint(&n);
        let k = rational::floor(iv.lo());
        let k2 = rational::ceil(iv.hi());
        let k: u64 = (&k).try_into().unwrap();
        let k2: u64 = (&k2).try_into().unwrap();
        assert!(BigUint::one() << k <= n && n <= BigUint::one() << k2);
        assert!(iv.width() < rat(1, 1 << 30));
    }

    #[test]
    fn exp2_brackets() {
        let iv = exp2_interval(&RationalInterval::point(rat(1, 2)));
        assert!(iv.lo() * iv.lo() <= int(2) && iv.hi() * iv.hi() >= int(2));
        assert!(iv.width() < rat(1, 1 << 40));
        let iv = exp2_interval(&RationalInterval::point(int(-3)));
        assert!(iv.contains(&rat(1, 8)));
        let iv = exp2_interval(&RationalInterval::point(rat(-7, 3)));
        let v = 2f64.powf(-7.0 / 3.0);
        assert!(to_f64(iv.lo()) <= v + 1e-15 && v - 1e-15 <= to_f64(iv.hi()));
    }

    #[test]
    fn power_comparisons() {
        let h = BigUint::from(100u32);
        let h4 = num_traits::pow(h.clone(), 12);
        assert_eq!(compare_power(&h4, &h, &int(12)).unwrap(), Ordering::Equal);
        assert_eq!(compare_power(&h4, &h, &rat(63, 5)).unwrap(), Ordering::Less);
        assert_eq!(compare_power(&h4, &h, &rat(42, 10)).unwrap(), Ordering::Greater);
        // 8 = 4^(3/2)
        assert_eq!(compare_power(&BigUint::from(8u32), &BigUint::from(4u32), &rat(3, 2)).unwrap(), Ordering::Equal);
    }
}

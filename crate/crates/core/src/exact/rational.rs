//! Helpers around [`BigRational`], which already keeps itself in lowest terms
//! with a positive denominator after every operation.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Naive height of a rational number: `max(|p|, q)` in lowest terms.
pub fn height(r: &Rational) -> BigInt {
    let p = r.numer().abs();
    let q = r.denom().clone();
    if p > q {
        p
    } else {
        q
    }
}

pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

pub fn ceil(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `r * 2^s` for any signed shift.
pub fn mul_pow2(r: &Rational, s: i64) -> Rational {
    if s >= 0 {
        Rational::new(r.numer() << (s as u64), r.denom().clone())
    } else {
        Rational::new(r.numer().clone(), r.denom() << ((-s) as u64))
    }
}

/// Largest `k / 2^s` that is `<= r`.
pub fn floor_dyadic(r: &Rational, s: i64) -> Rational {
    mul_pow2(&from_big(floor(&mul_pow2(r, s))), -s)
}

/// Smallest `k / 2^s` that is `>= r`.
pub fn ceil_dyadic(r: &Rational, s: i64) -> Rational {
    mul_pow2(&from_big(ceil(&mul_pow2(r, s))), -s)
}

/// Rough binary exponent: `bits(|p|) - bits(q)`, within one of `log2 |r|`.
pub fn approx_log2(r: &Rational) -> i64 {
    r.numer().bits() as i64 - r.denom().bits() as i64
}

pub fn to_f64(r: &Rational) -> f64 {
    // Shift both parts into f64 range before dividing.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let ns = (nb - 60).max(0);
    let ds = (db - 60).max(0);
    let n = big_to_f64(&(r.numer() >> ns as u64));
    let d = big_to_f64(&(r.denom() >> ds as u64));
    (n / d) * 2f64.powi((ns - ds).clamp(-2000, 2000) as i32)
}

fn big_to_f64(n: &BigInt) -> f64 {
    let (sign, digits) = n.to_u64_digits();
    let mut v = 0f64;
    for d in digits.iter().rev() {
        v = v * 18446744073709551616.0 + *d as f64;
    }
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

pub fn to_biguint(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}

/// Parses `"p/q"`, `"p"` or a plain decimal such as `"1.25"` or `"-0.5"`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(format!("invalid rational '{s}'"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_abs.is_empty() {
            BigInt::zero()
        } else {
            ip_abs.parse().map_err(|_| bad())?
        };
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), fp.len());
        let mag = Rational::new(whole * &scale + frac, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// `"p/q"` rendering (integers render without a denominator).
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// Serde adaptor: rationals as `"p/q"` strings.
pub fn serialize<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(r))
}

/// Serde adaptor: big integers as decimal strings.
pub fn serialize_big<S: serde::Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Total order by cross-multiplication. `Ord` on `Ratio` recurses once per
/// continued-fraction term, which is slow and can exhaust the stack on
/// endpoints with thousands of digits.
pub fn cmp(a: &Rational, b: &Rational) -> std::cmp::Ordering {
    let (sa, sb) = (a.numer().sign(), b.numer().sign());
    if sa != sb {
        return sa.cmp(&sb);
    }
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

/// Equality of reduced fractions, without going through `Ord`.
pub fn eq(a: &Rational, b: &Rational) -> bool {
    a.numer() == b.numer() && a.denom() == b.denom()
}

pub fn lt(a: &Rational, b: &Rational) -> bool {
    cmp(a, b).is_lt()
}

pub fn le(a: &Rational, b: &Rational) -> bool {
    cmp(a, b).is_le()
}

pub fn min(a: &Rational, b: &Rational) -> Rational {
    if le(a, b) {
        a.clone()
    } else {
        b.clone()
    }
}

pub fn max(a: &Rational, b: &Rational) -> Rational {
    if le(b, a) {
        a.clone()
    } else {
        b.clone()
    }
}

/// Floor of the `n`-th root of a non-negative integer.
pub fn floor_root(x: &BigUint, n: u32) -> BigUint {
    x.nth_root(n)
}

pub fn ceil_root(x: &BigUint, n: u32) -> BigUint {
    let r = x.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *x {
        r
    } else {
        r + 1u32
    }
}

//! Integer polynomials in ascending-coefficient form.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use super::upoly;
use super::ExactError;

/// A polynomial with integer coefficients, lowest degree first, with no
/// trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// `x^n - c`.
    pub fn pure_power(n: usize, c: &BigInt) -> Self {
        let mut v = vec![BigInt::zero(); n + 1];
        v[0] = -c;
        v[n] = BigInt::one();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one() && self.leading().is_some_and(|l| l.is_positive())
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Result<Self, ExactError> {
        let lead = self.leading().ok_or(ExactError::ZeroPolynomial)?;
        let mut g = self.content();
        if lead.is_negative() {
            g = -g;
        }
        Ok(Self::new(self.coeffs.iter().map(|c| c / &g).collect()))
    }

    /// Largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `x^d p(1/x)`.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(x)` via homogenised integer evaluation (no gcds).
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let Some(d) = self.degree() else { return 0 };
        let n = x.numer();
        let q = x.denom();
        let mut acc = self.coeffs[d].clone();
        let mut qpow = BigInt::one();
        for i in (0..d).rev() {
            qpow *= q;
            acc = acc * n + &self.coeffs[i] * &qpow;
        }
        sign_of(&acc)
    }

    /// Sign of `p(m / 2^s)`, the fast path used by bisection on dyadic grids.
    pub fn sign_at_dyadic(&self, m: &BigInt, s: u64) -> i8 {
        let Some(d) = self.degree() else { return 0 };
        let mut acc = self.coeffs[d].clone();
        for i in (0..d).rev() {
            acc = acc * m + (&self.coeffs[i] << (s * (d - i) as u64));
        }
        sign_of(&acc)
    }

    /// Sign of `p` as `x -> +inf` (`pos = true`) or `x -> -inf`.
    pub fn sign_at_infinity(&self, pos: bool) -> i8 {
        match (self.leading(), self.degree()) {
            (None, _) => 0,
            (Some(l), Some(d)) => {
                let s = sign_of(l);
                if pos || d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }

    /// Smallest positive integer multiple of a rational polynomial.
    pub fn from_rational(coeffs: &[Rational]) -> Self {
        let l = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        Self::new(coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect())
    }

    /// Primitive square-free part `p / gcd(p, p')`.
    pub fn squarefree_part(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::ZeroPolynomial);
        }
        let p = self.to_rational();
        let g = upoly::gcd(&p, &self.derivative().to_rational());
        let (q, _) = upoly::divrem(&p, &g);
        Self::from_rational(&q).primitive_part()
    }

    pub fn is_squarefree(&self) -> bool {
        if self.degree().unwrap_or(0) == 0 {
            return !self.is_zero();
        }
        upoly::gcd(&self.to_rational(), &self.derivative().to_rational()).len() == 1
    }

    /// Exact division test over `Q`.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        upoly::rem(&other.to_rational(), &self.to_rational()).is_empty()
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for IntPolynomial {
    type Err = ExactError;

    /// Parses an ascending coefficient list such as `"[-2,0,1]"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| ExactError::Parse(format!("polynomial must be a bracketed list: '{s}'")))?;
        if inner.trim().is_empty() {
            return Ok(Self::zero());
        }
        let coeffs = inner
            .split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|_| ExactError::Parse(format!("bad coefficient '{t}'"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}

//! Closed intervals with exact rational endpoints, and an expression
//! evaluator over them.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::rational::{self, mul_pow2, Rational};
use super::ExactError;

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, Eq, Hash)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl PartialEq for RationalInterval {
    fn eq(&self, other: &Self) -> bool {
        rational::eq(&self.lo, &other.lo) && rational::eq(&self.hi, &other.hi)
    }
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, ExactError> {
        if rational::lt(&hi, &lo) {
            return Err(ExactError::InvalidInterval);
        }
        Ok(Self { lo, hi })
    }

    /// Builds the interval spanned by two endpoints in either order.
    pub fn spanning(a: Rational, b: Rational) -> Self {
        if rational::le(&a, &b) {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn into_bounds(self) -> (Rational, Rational) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rational::int(2)
    }

    pub fn is_point(&self) -> bool {
        rational::eq(&self.lo, &self.hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        rational::le(&self.lo, x) && rational::le(x, &self.hi)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        rational::le(&other.lo, &self.lo) && rational::le(&self.hi, &other.hi)
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = rational::max(&self.lo, &other.lo);
        let hi = rational::min(&self.hi, &other.hi);
        rational::le(&lo, &hi).then_some(Self { lo, hi })
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: rational::min(&self.lo, &other.lo),
            hi: rational::max(&self.hi, &other.hi),
        }
    }

    /// `max |x|` over the interval.
    pub fn mag(&self) -> Rational {
        rational::max(&self.lo.abs(), &self.hi.abs())
    }

    /// `{ |x| : x in self }`.
    pub fn abs(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            Self { lo: Rational::zero(), hi: self.mag() }
        } else if !self.lo.is_negative() {
            self.clone()
        } else {
            Self { lo: -&self.hi, hi: -&self.lo }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_point() && o.is_point() {
            return Self::point(&self.lo * &o.lo);
        }
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if rational::lt(v, &lo) {
                lo = v.clone();
            }
            if rational::lt(&hi, v) {
                hi = v.clone();
            }
        }
        Self { lo, hi }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::spanning(&self.lo * k, &self.hi * k)
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        if self.contains_zero() {
            return Err(ExactError::DivisionByIntervalContainingZero);
        }
        Ok(Self { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&o.recip()?))
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, e: i32) -> Result<Self, ExactError> {
        if e < 0 {
            return self.powi(-e)?.recip();
        }
        if e == 0 {
            return Ok(Self::point(Rational::one()));
        }
        let e = e as usize;
        let a = num_traits::pow(self.lo.clone(), e);
        let b = num_traits::pow(self.hi.clone(), e);
        if e % 2 == 1 {
            return Ok(Self { lo: a, hi: b });
        }
        if self.contains_zero() {
            Ok(Self { lo: Rational::zero(), hi: rational::max(&a, &b) })
        } else {
            Ok(Self::spanning(a, b))
        }
    }

    /// Rounds both endpoints outward onto the grid `2^-bits`.
    pub fn round_outward_abs(&self, bits: i64) -> Self {
        Self {
            lo: rational::floor_dyadic(&self.lo, bits),
            hi: rational::ceil_dyadic(&self.hi, bits),
        }
    }

    /// Rounds each nonzero endpoint outward to `sig_bits` significant bits.
    /// Used to keep certified enclosures compact once they are accurate.
    pub fn round_outward_rel(&self, sig_bits: i64) -> Self {
        let down = |r: &Rational| {
            if r.is_zero() {
                return r.clone();
            }
            let s = sig_bits - rational::approx_log2(r);
            rational::floor_dyadic(r, s)
        };
        let up = |r: &Rational| {
            if r.is_zero() {
                return r.clone();
            }
            let s = sig_bits - rational::approx_log2(r);
            rational::ceil_dyadic(r, s)
        };
        Self { lo: down(&self.lo), hi: up(&self.hi) }
    }

    /// Halves the interval `k` times around its midpoint; only for tests of
    /// inclusion monotonicity, not an enclosure operation.
    pub fn shrink_towards_mid(&self, k: i64) -> Self {
        let m = self.midpoint();
        let half = mul_pow2(&self.width(), -(k + 1));
        Self { lo: &m - &half, hi: &m + &half }
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for RationalInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(2))?;
        seq.serialize_element(&self.lo.to_string())?;
        seq.serialize_element(&self.hi.to_string())?;
        seq.end()
    }
}

/// Arithmetic expressions over named variables.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(String),
    Const(Rational),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    pub fn var(name: &str) -> Self {
        Expr::Var(name.to_string())
    }

    pub fn constant(c: Rational) -> Self {
        Expr::Const(c)
    }

    /// Exact evaluation at rational values.
    pub fn eval_exact(&self, env: &HashMap<String, Rational>) -> Result<Rational, ExactError> {
        Ok(match self {
            Expr::Var(v) => env.get(v).cloned().ok_or_else(|| ExactError::UnboundVariable(v.clone()))?,
            Expr::Const(c) => c.clone(),
            Expr::Add(a, b) => a.eval_exact(env)? + b.eval_exact(env)?,
            Expr::Sub(a, b) => a.eval_exact(env)? - b.eval_exact(env)?,
            Expr::Mul(a, b) => a.eval_exact(env)? * b.eval_exact(env)?,
            Expr::Div(a, b) => {
                let d = b.eval_exact(env)?;
                if d.is_zero() {
                    return Err(ExactError::DivisionByIntervalContainingZero);
                }
                a.eval_exact(env)? / d
            }
            Expr::Neg(a) => -a.eval_exact(env)?,
            Expr::Pow(a, e) => {
                let x = a.eval_exact(env)?;
                if *e < 0 && x.is_zero() {
                    return Err(ExactError::DivisionByIntervalContainingZero);
                }
                num_traits::pow::Pow::pow(x, *e)
            }
        })
    }
}

/// Encloses `{ expr(x) : x in the assigned intervals }`.
pub fn interval_eval(
    expr: &Expr,
    assignment: &HashMap<String, RationalInterval>,
) -> Result<RationalInterval, ExactError> {
    Ok(match expr {
        Expr::Var(v) => assignment
            .get(v)
            .cloned()
            .ok_or_else(|| ExactError::UnboundVariable(v.clone()))?,
        Expr::Const(c) => RationalInterval::point(c.clone()),
        Expr::Add(a, b) => interval_eval(a, assignment)?.add(&interval_eval(b, assignment)?),
        Expr::Sub(a, b) => interval_eval(a, assignment)?.sub(&interval_eval(b, assignment)?),
        Expr::Mul(a, b) => interval_eval(a, assignment)?.mul(&interval_eval(b, assignment)?),
        Expr::Div(a, b) => interval_eval(a, assignment)?.div(&interval_eval(b, assignment)?)?,
        Expr::Neg(a) => interval_eval(a, assignment)?.neg(),
        Expr::Pow(a, e) => interval_eval(a, assignment)?.powi(*e)?,
    })
}

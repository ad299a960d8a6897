//! Dense univariate polynomial routines over an exact field, shared by
//! `Q[x]` and `K[x]`. A polynomial is a coefficient vector in ascending
//! degree with no trailing zeros; the empty vector is the zero polynomial.

use num_traits::{One, Zero};

use super::rational::Rational;

/// Exact field arithmetic. Elements carry whatever context they need, so
/// constants are produced from an existing element.
pub trait Coeff: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_c(&self) -> bool;
    fn add_c(&self, o: &Self) -> Self;
    fn sub_c(&self, o: &Self) -> Self;
    fn mul_c(&self, o: &Self) -> Self;
    /// Multiplicative inverse of a nonzero element.
    fn inv_c(&self) -> Self;
    fn neg_c(&self) -> Self;
    fn scale_int(&self, k: i64) -> Self;
}

impl Coeff for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_c(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_c(&self, o: &Self) -> Self {
        self * o
    }
    fn inv_c(&self) -> Self {
        self.recip()
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn scale_int(&self, k: i64) -> Self {
        self * Rational::from_integer(k.into())
    }
}

pub fn trim<T: Coeff>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(|c| c.is_zero_c()) {
        p.pop();
    }
    p
}

pub fn add<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add_c(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(out)
}

pub fn neg<T: Coeff>(a: &[T]) -> Vec<T> {
    a.iter().map(|c| c.neg_c()).collect()
}

pub fn sub<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    add(a, &neg(b))
}

pub fn mul<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let zero = a[0].zero_like();
    let mut out = vec![zero; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero_c() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_c(&x.mul_c(y));
        }
    }
    trim(out)
}

pub fn scale<T: Coeff>(a: &[T], k: &T) -> Vec<T> {
    trim(a.iter().map(|c| c.mul_c(k)).collect())
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem<T: Coeff>(a: &[T], b: &[T]) -> (Vec<T>, Vec<T>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r: Vec<T> = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b[b.len() - 1].inv_c();
    let zero = b[0].zero_like();
    let mut q = vec![zero; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r[r.len() - 1].mul_c(&lead_inv);
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub_c(&c.mul_c(bj));
        }
        q[shift] = c;
        // The top coefficient cancels exactly.
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    divrem(a, b).1
}

pub fn monic<T: Coeff>(a: &[T]) -> Vec<T> {
    match a.last() {
        None => Vec::new(),
        Some(l) => scale(a, &l.inv_c()),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd<T: Coeff>(a: &[T], b: &[T]) -> Vec<T> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn ext_gcd<T: Coeff>(a: &[T], b: &[T], one: &T) -> (Vec<T>, Vec<T>, Vec<T>) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![one.clone()];
    let mut s1: Vec<T> = Vec::new();
    let mut t0: Vec<T> = Vec::new();
    let mut t1 = vec![one.clone()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(l) => {
            let inv = l.inv_c();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn derivative<T: Coeff>(a: &[T]) -> Vec<T> {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c.scale_int(i as i64)).collect())
}

pub fn eval<T: Coeff>(a: &[T], x: &T) -> T {
    let mut acc = x.zero_like();
    for c in a.iter().rev() {
        acc = acc.mul_c(x).add_c(c);
    }
    acc
}

pub fn degree<T>(a: &[T]) -> Option<usize> {
    a.len().checked_sub(1)
}

//! Bounded enumeration of real algebraic numbers by degree and height.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use super::number::AlgebraicNumber;
use super::AlgebraicError;
use crate::exact::irreducible::is_irreducible;
use crate::exact::{isolate_real_roots, IntPolynomial};

/// Window of degrees `1..=max_degree` and heights `1..=max_height`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoundSpec {
    pub max_degree: usize,
    pub max_height: u64,
}

impl BoundSpec {
    pub fn new(max_degree: usize, max_height: u64) -> Result<Self, AlgebraicError> {
        if max_degree == 0 || max_height == 0 {
            return Err(AlgebraicError::InvalidBound);
        }
        Ok(Self { max_degree, max_height })
    }
}

/// Primitive polynomials of exact degree and height with positive leading
/// coefficient, in lexicographic order of their ascending coefficients.
pub fn polynomials_of(degree: usize, height: u64) -> Vec<IntPolynomial> {
    let h = height as i64;
    let mut out = Vec::new();
    let mut c = vec![-h; degree + 1];
    c[degree] = 1;
    loop {
        if c.iter().any(|x| x.abs() == h) {
            let p = IntPolynomial::from_i64s(&c);
            if p.content().is_one() {
                out.push(p);
            }
        }
        // Odometer over (c_0, ..., c_degree), last coordinate fastest.
        let mut i = degree as isize;
        loop {
            if i < 0 {
                out.sort();
                return out;
            }
            let iu = i as usize;
            if c[iu] < h {
                c[iu] += 1;
                break;
            }
            c[iu] = if iu == degree { 1 } else { -h };
            i -= 1;
        }
    }
}

fn real_roots_if_irreducible(p: &IntPolynomial) -> Vec<AlgebraicNumber> {
    if is_irreducible(p).ok().flatten() != Some(true) {
        return Vec::new();
    }
    isolate_real_roots(p)
        .expect("irreducible implies square-free")
        .into_iter()
        .map(|iso| AlgebraicNumber::trusted(p.clone(), iso))
        .collect()
}

/// Every real algebraic number in the window, once, ordered by degree,
/// height, coefficient vector and root index.
pub fn enumerate_algebraics(spec: &BoundSpec) -> Vec<AlgebraicNumber> {
    let mut out = Vec::new();
    for d in 1..=spec.max_degree {
        for h in 1..=spec.max_height {
            let polys = polynomials_of(d, h);
            let roots: Vec<Vec<AlgebraicNumber>> = polys.par_iter().map(real_roots_if_irreducible).collect();
            out.extend(roots.into_iter().flatten());
        }
    }
    out
}

/// Heights are positive; used to build `BoundSpec` from big-integer input.
pub fn height_to_u64(h: &BigInt) -> Result<u64, AlgebraicError> {
    if !h.is_positive() {
        return Err(AlgebraicError::InvalidBound);
    }
    u64::try_from(h).map_err(|_| AlgebraicError::InvalidBound)
}

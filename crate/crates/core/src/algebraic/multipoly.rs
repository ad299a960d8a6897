//! Integer polynomials in `y, x_1, ..., x_k`, used as relations in the
//! height bound for roots of polynomials with algebraic coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::field::{Field, FieldElement};
use crate::exact::rational;

/// Sparse integer polynomial. Each key holds the exponents of
/// `(y, x_1, ..., x_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    /// The zero polynomial in `y` and `nvars` further variables.
    pub fn new(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    /// Adds `coeff * y^exps[0] * x_1^exps[1] * ...`.
    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigInt) {
        assert_eq!(exps.len(), self.nvars + 1, "exponent vector length");
        let e = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    fn degree_in(&self, var: usize) -> usize {
        self.terms.keys().map(|e| e[var] as usize).max().unwrap_or(0)
    }

    pub fn degree_in_y(&self) -> usize {
        self.degree_in(0)
    }

    /// Degree in `x_i`, counting from 1.
    pub fn degree_in_x(&self, i: usize) -> usize {
        self.degree_in(i)
    }

    pub fn height(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Substitutes `x_i = values[i-1]`, leaving a polynomial in `y` over the
    /// field.
    pub fn substitute(&self, field: &Field, values: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(values.len(), self.nvars, "one value per x variable");
        let dy = self.degree_in_y();
        let mut out = vec![FieldElement::zero(field); dy + 1];
        for (exps, c) in &self.terms {
            let mut term = FieldElement::from_rational(field, rational::from_big(c.clone()));
            for (v, &e) in values.iter().zip(&exps[1..]) {
                if e > 0 {
                    term = &term * &v.pow(e);
                }
            }
            let slot = &mut out[exps[0] as usize];
            *slot = &*slot + &term;
        }
        crate::exact::upoly::trim(out)
    }

    /// The relation `sum_{j=0}^{r} x_1 x_{j+2} y^j - sum_{j=0}^{l} x_{r+j+3} y^j`
    /// satisfied by `y = alpha`, `x_1 = gamma`, `x_2.. = b_0..b_r`,
    /// `x_{r+3}.. = a_0..a_l` whenever `gamma = P(alpha) / Q(alpha)`.
    pub fn quotient_relation(r: usize, l: usize) -> Self {
        let nvars = r + l + 3;
        let mut g = Self::new(nvars);
        for j in 0..=r {
            let mut e = vec![0u32; nvars + 1];
            e[0] = j as u32;
            e[1] = 1;
            e[j + 2] = 1;
            g.add_term(e, BigInt::from(1));
        }
        for j in 0..=l {
            let mut e = vec![0u32; nvars + 1];
            e[0] = j as u32;
            e[r + j + 3] = 1;
            g.add_term(e, BigInt::from(-1));
        }
        g
    }
}

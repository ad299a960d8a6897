//! A small expression language for maps, e.g. `theta*x`, `theta*(x-1)` or
//! `(theta*x+1)/(x+2)`. Raw coefficient JSON is accepted as well.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' uint)?
//! atom   := number | 'x' | 'theta' | '(' expr ')'
//! ```

use super::rational_map::{normalize_map, RationalMap};
use super::MapError;
use crate::algebraic::{Field, FieldElement};
use crate::exact::rational::{self, Rational};
use crate::exact::upoly;

/// Largest exponent accepted after `^`.
const MAX_POWER: u32 = 64;

type Poly = Vec<FieldElement>;

/// A fraction of polynomials in `K[x]`, reduced only at the end.
#[derive(Clone)]
struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    fn constant(c: FieldElement) -> Self {
        let one = FieldElement::one(c.field());
        Self { num: upoly::trim(vec![c]), den: vec![one] }
    }

    fn add(&self, o: &Self) -> Self {
        Self {
            num: upoly::add(&upoly::mul(&self.num, &o.den), &upoly::mul(&o.num, &self.den)),
            den: upoly::mul(&self.den, &o.den),
        }
    }

    fn neg(&self) -> Self {
        Self { num: upoly::neg(&self.num), den: self.den.clone() }
    }

    fn mul(&self, o: &Self) -> Self {
        Self { num: upoly::mul(&self.num, &o.num), den: upoly::mul(&self.den, &o.den) }
    }

    fn div(&self, o: &Self) -> Result<Self, MapError> {
        if o.num.is_empty() {
            return Err(MapError::ZeroDenominator);
        }
        Ok(Self { num: upoly::mul(&self.num, &o.den), den: upoly::mul(&self.den, &o.num) })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    X,
    Theta,
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, MapError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(rational::parse_rational(&lit).map_err(|_| MapError::Parse(format!("bad number '{lit}'")))?));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push(match word.as_str() {
                "x" => Tok::X,
                "theta" | "θ" => Tok::Theta,
                _ => return Err(MapError::Parse(format!("unknown identifier '{word}'"))),
            });
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(MapError::Parse(format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Field,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac, MapError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Frac, MapError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.factor()?);
            } else if self.eat('/') {
                acc = acc.div(&self.factor()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Frac, MapError> {
        if self.eat('-') {
            return Ok(self.factor()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Frac, MapError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = match self.toks.get(self.pos) {
            Some(Tok::Num(n)) if n.is_integer() => n.to_integer(),
            _ => return Err(MapError::Parse("exponent must be a non-negative integer".into())),
        };
        self.pos += 1;
        let e = u32::try_from(e).ok().filter(|&e| e <= MAX_POWER).ok_or_else(|| MapError::Parse(format!("exponent above {MAX_POWER}")))?;
        let mut acc = Frac::constant(FieldElement::one(self.field));
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Frac, MapError> {
        let tok = self.peek().cloned().ok_or_else(|| MapError::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Frac::constant(FieldElement::from_rational(self.field, n))),
            Tok::Theta => Ok(Frac::constant(FieldElement::theta(self.field))),
            Tok::X => Ok(Frac {
                num: vec![FieldElement::zero(self.field), FieldElement::one(self.field)],
                den: vec![FieldElement::one(self.field)],
            }),
            Tok::Op('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(MapError::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Tok::Op(c) => Err(MapError::Parse(format!("unexpected '{c}'"))),
        }
    }
}

/// Parses a map over `field`, either in the expression language or as
/// `{"num": [[..]], "den": [[..]]}` coefficient JSON.
pub fn parse_map(field: &Field, s: &str) -> Result<RationalMap, MapError> {
    let s = s.trim();
    if s.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| MapError::Parse(e.to_string()))?;
        return RationalMap::from_json(field, &v);
    }
    let mut p = Parser { field, toks: tokenize(s)?, pos: 0 };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(MapError::Parse(format!("trailing input in '{s}'")));
    }
    normalize_map(field, f.num, f.den)
}

//! Rational maps `F = P / Q` with coefficients in a number field.

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::MapError;
use crate::algebraic::number::minimal_relation;
use crate::algebraic::{kpoly, minimal_polynomial, AlgebraicNumber, Field, FieldElement};
use crate::exact::rational::{self, Rational};
use crate::exact::upoly;
use crate::exact::RationalInterval;

/// Enclosure width used for coefficients when bounding over an interval.
const COEFF_WIDTH_BITS: i64 = 64;

#[derive(Clone, Debug)]
pub struct RationalMap {
    field: Field,
    num: Vec<FieldElement>,
    den: Vec<FieldElement>,
}

/// Removes common factors of `p` and `q` in `K[x]` and makes the
/// denominator monic.
pub fn normalize_map(field: &Field, p: Vec<FieldElement>, q: Vec<FieldElement>) -> Result<RationalMap, MapError> {
    let p = upoly::trim(p);
    let q = upoly::trim(q);
    if q.is_empty() {
        return Err(MapError::ZeroDenominator);
    }
    if p.iter().chain(&q).any(|c| !c.field().same_field(field)) {
        return Err(MapError::Algebraic(crate::algebraic::AlgebraicError::FieldMismatch));
    }
    let (mut p, mut q) = (p, q);
    if !p.is_empty() {
        let g = upoly::gcd(&p, &q);
        if g.len() > 1 {
            p = upoly::divrem(&p, &g).0;
            q = upoly::divrem(&q, &g).0;
        }
    }
    let lead_inv = q.last().expect("nonzero").inverse()?;
    let p = upoly::scale(&p, &lead_inv);
    let q = upoly::scale(&q, &lead_inv);
    if p.len() <= 1 && q.len() == 1 {
        return Err(MapError::ConstantMap);
    }
    Ok(RationalMap { field: field.clone(), num: p, den: q })
}

impl PartialEq for RationalMap {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_field(&other.field) && self.num == other.num && self.den == other.den
    }
}

impl RationalMap {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn numerator(&self) -> &[FieldElement] {
        &self.num
    }

    pub fn denominator(&self) -> &[FieldElement] {
        &self.den
    }

    /// `F(x) = x`.
    pub fn is_identity(&self) -> bool {
        self.den.len() == 1
            && self.num.len() == 2
            && self.num[0].is_zero()
            && self.num[1].as_rational().is_some_and(|c| c == Rational::from_integer(1.into()))
    }

    /// `F(alpha)` as a field element.
    pub fn eval_element(&self, alpha: &Rational) -> Result<FieldElement, MapError> {
        let q = kpoly::eval_at_rational(&self.field, &self.den, alpha);
        if q.is_zero() {
            return Err(MapError::PoleAtAlpha(rational::fmt_rational(alpha)));
        }
        let p = kpoly::eval_at_rational(&self.field, &self.num, alpha);
        Ok(&p * &q.inverse()?)
    }

    /// `P' Q - P Q'` and `Q^2`.
    pub fn derivative_parts(&self) -> (Vec<FieldElement>, Vec<FieldElement>) {
        let dp = upoly::derivative(&self.num);
        let dq = upoly::derivative(&self.den);
        let n = upoly::sub(&upoly::mul(&dp, &self.den), &upoly::mul(&self.num, &dq));
        (n, upoly::mul(&self.den, &self.den))
    }

    /// Coefficient rows as strings, `{"num": [[..],..], "den": [[..],..]}`.
    pub fn to_json(&self) -> Value {
        let rows = |p: &[FieldElement]| -> Vec<Vec<String>> {
            p.iter().map(|c| c.coords().iter().map(rational::fmt_rational).collect()).collect()
        };
        json!({"num": rows(&self.num), "den": rows(&self.den)})
    }

    /// Parses `{"num": [[..]], "den": [[..]]}` where each coefficient is a
    /// length-`m` vector of rationals (numbers or strings).
    pub fn from_json(field: &Field, v: &Value) -> Result<Self, MapError> {
        let parse_poly = |key: &str| -> Result<Vec<FieldElement>, MapError> {
            let rows = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| MapError::Parse(format!("map JSON needs an array '{key}'")))?;
            rows.iter()
                .map(|row| {
                    let coords = row
                        .as_array()
                        .ok_or_else(|| MapError::Parse("each coefficient must be a list".into()))?
                        .iter()
                        .map(|c| match c {
                            Value::Number(n) => Ok(rational::parse_rational(&n.to_string())?),
                            Value::String(s) => Ok(rational::parse_rational(s)?),
                            _ => Err(MapError::Parse("coordinates must be numbers or strings".into())),
                        })
                        .collect::<Result<Vec<_>, MapError>>()?;
                    Ok(FieldElement::new(field, coords)?)
                })
                .collect()
        };
        let num = parse_poly("num")?;
        let den = if v.get("den").is_some() { parse_poly("den")? } else { vec![FieldElement::one(field)] };
        normalize_map(field, num, den)
    }
}

/// `F(alpha)` as a real algebraic number under the field's embedding.
pub fn eval_at_rational(f: &RationalMap, alpha: &Rational) -> Result<AlgebraicNumber, MapError> {
    Ok(minimal_polynomial(&f.eval_element(alpha)?))
}

/// Result of scanning small rationals for degree drops of `F(alpha)`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct PrimitivityScan {
    #[serde(serialize_with = "ser_rationals")]
    pub exceptions: Vec<Rational>,
    #[serde(serialize_with = "ser_rationals")]
    pub poles: Vec<Rational>,
    pub scanned: usize,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational::fmt_rational))
}

/// All rationals `p/q` in lowest terms with `max(|p|, q) <= height_cap`, in
/// increasing order.
pub fn rationals_up_to(height_cap: u64) -> Vec<Rational> {
    let h = height_cap as i64;
    let mut out = Vec::new();
    for q in 1..=h {
        for p in -h..=h {
            if num_integer::gcd(p, q) == 1 {
                out.push(rational::rat(p, q));
            }
        }
    }
    out.sort();
    out
}

/// Rationals of height at most `height_cap` at which `F(alpha)` has degree
/// below `[K:Q]`; poles are reported separately.
pub fn primitivity_scan(f: &RationalMap, height_cap: &BigInt) -> Result<PrimitivityScan, MapError> {
    let cap = u64::try_from(height_cap).map_err(|_| MapError::Parse("height cap must be a positive 64-bit integer".into()))?;
    if cap == 0 {
        return Err(MapError::Parse("height cap must be positive".into()));
    }
    let m = f.field.degree();
    let (mut exceptions, mut poles) = (Vec::new(), Vec::new());
    let all = rationals_up_to(cap);
    for alpha in &all {
        match f.eval_element(alpha) {
            Err(MapError::PoleAtAlpha(_)) => poles.push(alpha.clone()),
            Err(e) => return Err(e),
            Ok(v) => {
                if minimal_relation(&v).len() - 1 < m {
                    exceptions.push(alpha.clone());
                }
            }
        }
    }
    Ok(PrimitivityScan { exceptions, poles, scanned: all.len() })
}

/// Enclosure of `{ F(x) : x in iv }` given an enclosure of `theta`.
pub fn map_enclosure_at(f: &RationalMap, iv: &RationalInterval, theta: &RationalInterval) -> Result<RationalInterval, MapError> {
    let q = kpoly::enclosure_at(&f.den, iv, theta);
    if q.contains_zero() {
        return Err(MapError::PoleInInterval);
    }
    let p = kpoly::enclosure_at(&f.num, iv, theta);
    Ok(p.div(&q)?)
}

/// Enclosure of `{ F(x) : x in iv }` by interval arithmetic over enclosures
/// of the coefficients.
pub fn map_enclosure(f: &RationalMap, iv: &RationalInterval) -> Result<RationalInterval, MapError> {
    let theta = f.field.theta_enclosure(&rational::mul_pow2(&Rational::from_integer(1.into()), -COEFF_WIDTH_BITS))?;
    map_enclosure_at(f, iv, &theta)
}

/// Rational upper bound on `|F'|` over `iv`.
pub fn derivative_bound(f: &RationalMap, iv: &RationalInterval) -> Result<Rational, MapError> {
    let theta = f.field.theta_enclosure(&rational::mul_pow2(&Rational::from_integer(1.into()), -COEFF_WIDTH_BITS))?;
    let q = kpoly::enclosure_at(&f.den, iv, &theta);
    if q.contains_zero() {
        return Err(MapError::PoleInInterval);
    }
    let (n, d) = f.derivative_parts();
    let nv = kpoly::enclosure_at(&n, iv, &theta);
    let dv = kpoly::enclosure_at(&d, iv, &theta);
    // Q^2 evaluated by Horner can still straddle zero on wide intervals.
    let dv = if dv.contains_zero() { q.powi(2)? } else { dv };
    Ok(nv.div(&dv)?.mag())
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::NumberField;
    use crate::exact::rational::{int, rat};
    use crate::exact::IntPolynomial;

    fn q_elems(field: &Field, v: &[i64]) -> Vec<FieldElement> {
        v.iter().map(|&c| FieldElement::from_rational(field, int(c))).collect()
    }

    fn sqrt2_x() -> RationalMap {
        let k = NumberField::parse("[-2,0,1]@[1,2]").unwrap();
        normalize_map(&k, vec![FieldElement::zero(&k), FieldElement::theta(&k)], vec![FieldElement::one(&k)]).unwrap()
    }

    #[test]
    fn normalization_removes_common_factor() {
        let q = NumberField::rationals();
        let f = normalize_map(&q, q_elems(&q, &[-1, 0, 1]), q_elems(&q, &[-1, 1])).unwrap();
        assert_eq!(f.numerator(), q_elems(&q, &[1, 1]).as_slice());
        assert_eq!(f.denominator(), q_elems(&q, &[1]).as_slice());
        assert_eq!(normalize_map(&q, q_elems(&q, &[2]), q_elems(&q, &[1])).unwrap_err(), MapError::ConstantMap);
        assert_eq!(normalize_map(&q, q_elems(&q, &[2]), vec![]).unwrap_err(), MapError::ZeroDenominator);
        // (2x + 2) / (x + 1) is constant after cancellation.
        assert_eq!(normalize_map(&q, q_elems(&q, &[2, 2]), q_elems(&q, &[1, 1])).unwrap_err(), MapError::ConstantMap);
    }

    #[test]
    fn sqrt2_x_unchanged() {
        let f = sqrt2_x();
        assert_eq!(f.numerator().len(), 2);
        assert_eq!(f.numerator()[1], FieldElement::theta(f.field()));
    }

    #[test]
    fn evaluation_examples() {
        let g = eval_at_rational(&sqrt2_x(), &rat(11, 100)).unwrap();
        assert_eq!(g.min_poly(), &IntPolynomial::from_i64s(&[-121, 0, 5000]));
        assert_eq!(g.height(), BigInt::from(5000));
        let k3 = NumberField::pure_root(3, 2).unwrap();
        let f3 = normalize_map(&k3, vec![FieldElement::zero(&k3), FieldElement::theta(&k3)], vec![FieldElement::one(&k3)]).unwrap();
        let g = eval_at_rational(&f3, &rat(11, 100)).unwrap();
        assert_eq!(g.min_poly(), &IntPolynomial::from_i64s(&[-1331, 0, 0, 500000]));
        assert_eq!(g.degree(), 3);
        let z = eval_at_rational(&sqrt2_x(), &int(0)).unwrap();
        assert_eq!(z.degree(), 1);
        assert_eq!(z.as_rational(), Some(int(0)));
    }

    #[test]
    fn pole_detection() {
        let q = NumberField::rationals();
        let f = normalize_map(&q, q_elems(&q, &[1, 1]), q_elems(&q, &[-1, 1])).unwrap();
        assert!(matches!(eval_at_rational(&f, &int(1)).unwrap_err(), MapError::PoleAtAlpha(_)));
        let iv = RationalInterval::new(rat(9, 10), rat(11, 10)).unwrap();
        assert_eq!(map_enclosure(&f, &iv).unwrap_err(), MapError::PoleInInterval);
    }

    #[test]
    fn primitivity_exceptions() {
        let scan = primitivity_scan(&sqrt2_x(), &BigInt::from(30)).unwrap();
        assert_eq!(scan.exceptions, vec![int(0)]);
        let k = sqrt2_x().field().clone();
        let shifted = normalize_map(&k, vec![-&FieldElement::theta(&k), FieldElement::theta(&k)], vec![FieldElement::one(&k)]).unwrap();
        assert_eq!(primitivity_scan(&shifted, &BigInt::from(10)).unwrap().exceptions, vec![int(1)]);
        let q = NumberField::rationals();
        let id = normalize_map(&q, q_elems(&q, &[0, 1]), q_elems(&q, &[1])).unwrap();
        assert!(primitivity_scan(&id, &BigInt::from(10)).unwrap().exceptions.is_empty());
    }

    #[test]
    fn derivative_bounds() {
        let unit = RationalInterval::new(int(0), int(1)).unwrap();
        let b = derivative_bound(&sqrt2_x(), &unit).unwrap();
        assert!(&b * &b >= int(2));
        let q = NumberField::rationals();
        let sq = normalize_map(&q, q_elems(&q, &[0, 0, 1]), q_elems(&q, &[1])).unwrap();
        assert!(derivative_bound(&sq, &unit).unwrap() >= int(2));
        let inv = normalize_map(&q, q_elems(&q, &[1]), q_elems(&q, &[0, 1])).unwrap();
        let b = derivative_bound(&inv, &RationalInterval::new(rat(1, 2), int(1)).unwrap()).unwrap();
        assert!(b >= int(4));
    }

    #[test]
    fn enclosures() {
        let q = NumberField::rationals();
        let id = normalize_map(&q, q_elems(&q, &[0, 1]), q_elems(&q, &[1])).unwrap();
        let iv = RationalInterval::new(rat(11, 100), rat(111, 1000)).unwrap();
        assert_eq!(map_enclosure(&id, &iv).unwrap(), iv);
        let e = map_enclosure(&sqrt2_x(), &iv).unwrap();
        // The image is [0.11 sqrt2, 0.111 sqrt2]; compare squares exactly.
        assert!(e.lo() * e.lo() <= int(2) * rat(11, 100) * rat(11, 100));
        assert!(e.hi() * e.hi() >= int(2) * rat(111, 1000) * rat(111, 1000));
        assert!(e.is_subset_of(&RationalInterval::new(rat(15556, 100000), rat(15698, 100000)).unwrap()));
    }

    #[test]
    fn json_round_trip() {
        let f = sqrt2_x();
        let back = RationalMap::from_json(f.field(), &f.to_json()).unwrap();
        assert_eq!(back, f);
        let v: Value = serde_json::from_str(r#"{"num":[[0,0],[0,1]],"den":[[1,0]]}"#).unwrap();
        assert_eq!(RationalMap::from_json(f.field(), &v).unwrap(), f);
    }
}

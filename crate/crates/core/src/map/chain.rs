//! Algebraic approximants `gamma_k = F(alpha_k)` and the inequality chain
//! relating their heights to the approximation quality of `F(xi)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::rational_map::{derivative_bound, map_enclosure_at, RationalMap};
use super::MapError;
use crate::algebraic::{minimal_polynomial, AlgebraicNumber};
use crate::exact::log::{exp2_interval, log2_int, log2_interval, log2_rational};
use crate::exact::rational::{self, Rational};
use crate::exact::RationalInterval;
use crate::liouville::LiouvilleNumber;

/// Significant bits kept in a certified gap enclosure.
const GAP_SIG_BITS: i64 = 64;
/// A gap is accepted once its relative width is at most `2^-GAP_REL_BITS`.
const GAP_REL_BITS: i64 = 16;
/// Log-domain quantities in reports are rounded outward to `2^-REPORT_BITS`.
const REPORT_BITS: i64 = 32;
/// Relative slack on the mean value bound; the gap enclosure is only
/// accurate to `2^-GAP_REL_BITS`.
const MVT_SLACK_BITS: i64 = 14;

#[derive(Clone, Debug, Serialize)]
pub struct ApproximantRecord {
    pub k: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub alpha: Rational,
    pub gamma: AlgebraicNumber,
    #[serde(serialize_with = "rational::serialize_big")]
    pub h_alpha: BigInt,
    #[serde(serialize_with = "rational::serialize_big")]
    pub h_gamma: BigInt,
    /// Encloses `|F(xi) - gamma_k|`.
    pub gap: RationalInterval,
    pub omega: RationalInterval,
    /// Upper bound on `|F'|` between `xi` and `alpha_k`, with slack.
    #[serde(serialize_with = "rational::serialize")]
    pub mvt_bound: Rational,
    /// `F` is the identity, so `gap` and `omega` are those of the convergent.
    #[serde(skip)]
    pub identity: bool,
}

fn pow2(s: i64) -> Rational {
    rational::mul_pow2(&Rational::one(), s)
}

/// Certified `|F(xi) - gamma|` with relative accuracy `2^-GAP_REL_BITS`,
/// and the `xi` enclosure it was computed from.
fn certified_gap(
    xi: &LiouvilleNumber,
    f: &RationalMap,
    gamma: &crate::algebraic::FieldElement,
    start: Rational,
    budget: usize,
) -> Result<(RationalInterval, RationalInterval), MapError> {
    let mut w = start;
    for _ in 0..budget.max(1) {
        let x = xi.enclosure(&w)?;
        let theta = f.field().theta_enclosure_canonical(&w)?;
        let fx = map_enclosure_at(f, &x, &theta)?;
        let d = fx.sub(&gamma.enclosure_at(&theta)).abs();
        if d.lo().is_positive() && rational::le(&d.width(), &rational::mul_pow2(d.lo(), -GAP_REL_BITS)) {
            return Ok((d.round_outward_rel(GAP_SIG_BITS), x));
        }
        w = rational::mul_pow2(&w, -32);
    }
    Err(MapError::RefinementBudgetExceeded)
}

/// One record per index in `ks`. `budget` caps the number of refinement
/// rounds per record, each shrinking the working width by `2^-32`.
pub fn approximant_sequence(xi: &LiouvilleNumber, f: &RationalMap, ks: &[usize], budget: usize) -> Result<Vec<ApproximantRecord>, MapError> {
    let identity = f.is_identity();
    ks.iter()
        .map(|&k| {
            let conv = xi.convergent(k)?;
            let omega = xi.omega_measured(k)?;
            let alpha = conv.value.clone();
            let g_elem = f.eval_element(&alpha)?;
            let gamma = minimal_polynomial(&g_elem);
            let h_alpha = conv.height();
            let h_gamma = gamma.height();
            let (gap, mvt_bound) = if identity {
                (conv.gap.clone(), Rational::one())
            } else {
                let start = rational::mul_pow2(conv.gap.lo(), -24);
                let (gap, x) = certified_gap(xi, f, &g_elem, start, budget)?;
                let hull = x.hull(&RationalInterval::point(alpha.clone()));
                let b = derivative_bound(f, &hull)?;
                (gap, &b + rational::mul_pow2(&b, -MVT_SLACK_BITS))
            };
            Ok(ApproximantRecord { k, alpha, gamma, h_alpha, h_gamma, gap, omega, mvt_bound, identity })
        })
        .collect()
}

/// `C > 1` in `H(alpha_{k+1}) <= H(alpha_k)^(C omega_k)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthConstant(#[serde(serialize_with = "rational::serialize")] Rational);

impl GrowthConstant {
    pub fn new(c: Rational) -> Result<Self, MapError> {
        if c <= Rational::one() {
            return Err(MapError::GrowthConstantNotAboveOne);
        }
        Ok(Self(c))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

/// Smallest `C` on the grid `2^-20` that certifiably covers every
/// consecutive pair of records, and at least `1 + 2^-20`.
pub fn measure_growth_constant(records: &[ApproximantRecord]) -> Result<GrowthConstant, MapError> {
    if records.is_empty() {
        return Err(MapError::EmptyRecords);
    }
    let floor = Rational::one() + pow2(-20);
    let mut c = floor.clone();
    for w in records.windows(2) {
        if w[1].k != w[0].k + 1 || w[0].h_alpha <= BigInt::one() || !w[0].omega.lo().is_positive() {
            continue;
        }
        let num = log2_int(&w[1].h_alpha);
        let den = log2_int(&w[0].h_alpha).scale(w[0].omega.lo());
        let ratio = num.div(&den)?;
        c = rational::max(&c, &rational::ceil_dyadic(ratio.hi(), 20));
    }
    GrowthConstant::new(c)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainEntry {
    pub k: usize,
    #[serde(serialize_with = "rational::serialize_big")]
    pub h_alpha: BigInt,
    #[serde(serialize_with = "rational::serialize_big")]
    pub h_gamma: BigInt,
    pub gap: RationalInterval,
    pub omega: RationalInterval,
    /// `gap.hi * H(alpha_k)^omega.lo`.
    pub ratio6: RationalInterval,
    #[serde(serialize_with = "rational::serialize")]
    pub mvt_bound: Rational,
    /// `H(gamma_k) / H(alpha_k)^(2m^2)`.
    #[serde(serialize_with = "rational::serialize")]
    pub ratio7: Rational,
    /// `log2 H(gamma_{k+1}) - 2 C m^2 omega_k log2 H(alpha_k)`.
    pub ratio12: Option<RationalInterval>,
    /// `-log2 gap / log2 H(gamma_k)`.
    pub e: RationalInterval,
    pub eq6: bool,
    pub eq7: bool,
    pub eq9: bool,
    pub eq12: Option<bool>,
}

impl ChainEntry {
    pub fn all_ok(&self) -> bool {
        self.eq6 && self.eq7 && self.eq9 && self.eq12 != Some(false)
    }

    pub fn to_json(&self) -> Value {
        let pair = |iv: &RationalInterval| json!([rational::fmt_rational(iv.lo()), rational::fmt_rational(iv.hi())]);
        let mut checks = json!({"eq6": self.eq6, "eq7": self.eq7, "eq9": self.eq9});
        if let Some(b) = self.eq12 {
            checks["eq12"] = json!(b);
        }
        json!({
            "k": self.k,
            "h_alpha": self.h_alpha.to_string(),
            "h_gamma": self.h_gamma.to_string(),
            "gap": pair(&self.gap),
            "e": pair(&self.e),
            "checks": checks,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub m: usize,
    pub c: GrowthConstant,
    pub entries: Vec<ChainEntry>,
    /// `e_k.lo` strictly increasing.
    pub monotone_e: bool,
}

impl TheoremReport {
    pub fn all_ok(&self) -> bool {
        self.monotone_e && self.entries.iter().all(ChainEntry::all_ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "C": rational::fmt_rational(self.c.value()),
            "records": self.entries.iter().map(ChainEntry::to_json).collect::<Vec<_>>(),
            "monotone_e": self.monotone_e,
            "all_ok": self.all_ok(),
        })
    }
}

fn log2_height(h: &BigInt) -> RationalInterval {
    log2_int(h)
}

/// Evaluates the chain for each record. `m` is the field degree.
pub fn verify_theorem_chain(records: &[ApproximantRecord], c: &GrowthConstant, m: usize) -> Result<TheoremReport, MapError> {
    if records.is_empty() {
        return Err(MapError::EmptyRecords);
    }
    let m2 = 2 * m * m;
    let four_m2 = Rational::from_integer(BigInt::from(4 * m * m));
    let mut entries = Vec::with_capacity(records.len());
    for (i, r) in records.iter().enumerate() {
        let la = log2_height(&r.h_alpha);
        let lg = log2_height(&r.h_gamma);
        if r.gap.lo().is_zero() {
            return Err(MapError::RefinementBudgetExceeded);
        }
        let log_gap = log2_interval(&r.gap)?;
        let ratio6 = exp2_interval(&log2_rational(r.gap.hi())?.add(&la.scale(r.omega.lo())).round_outward_abs(64));
        let eq6 = rational::le(ratio6.hi(), &r.mvt_bound);
        let ratio7 = Rational::new(r.h_gamma.clone(), num_traits::pow(r.h_alpha.clone(), m2));
        let eq7 = ratio7 <= Rational::one();
        let e = if r.identity && r.h_gamma == r.h_alpha {
            r.omega.clone()
        } else if r.h_gamma <= BigInt::one() {
            return Err(MapError::Parse(format!("gamma_{} has height 1", r.k)));
        } else {
            log_gap.neg().div(&lg)?.round_outward_abs(REPORT_BITS)
        };
        let eq9 = rational::le(&(r.omega.lo() / &four_m2), e.lo());
        let (ratio12, eq12) = match records.get(i + 1) {
            Some(next) if next.k == r.k + 1 => {
                let coef = c.value() * Rational::from_integer(BigInt::from(m2)) * r.omega.lo();
                let v = log2_height(&next.h_gamma).sub(&la.scale(&coef)).round_outward_abs(REPORT_BITS);
                let ok = !v.hi().is_positive();
                (Some(v), Some(ok))
            }
            _ => (None, None),
        };
        entries.push(ChainEntry {
            k: r.k,
            h_alpha: r.h_alpha.clone(),
            h_gamma: r.h_gamma.clone(),
            gap: r.gap.clone(),
            omega: r.omega.clone(),
            ratio6,
            mvt_bound: r.mvt_bound.clone(),
            ratio7,
            ratio12,
            e,
            eq6,
            eq7,
            eq9,
            eq12,
        });
    }
    let monotone_e = entries.windows(2).all(|w| w[0].e.lo() < w[1].e.lo());
    Ok(TheoremReport { m, c: c.clone(), entries, monotone_e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::NumberField;
    use crate::exact::rational::{int, rat};
    use crate::map::dsl::parse_map;

    fn demo(ks: &[usize]) -> Vec<ApproximantRecord> {
        let xi = LiouvilleNumber::parse("series:10:factorial").unwrap();
        let k = NumberField::parse("[-2,0,1]@[1,2]").unwrap();
        let f = parse_map(&k, "theta*x").unwrap();
        approximant_sequence(&xi, &f, ks, 8).unwrap()
    }

    #[test]
    fn demo_heights_and_gaps() {
        let r = demo(&[2, 3]);
        assert_eq!(r[0].h_gamma, BigInt::from(5000));
        assert!(r[0].gap.is_subset_of(&RationalInterval::new(rat(141, 100_000_000), rat(158, 100_000_000)).unwrap()));
        assert_eq!(r[1].h_gamma, BigInt::from(500_000_000_000u64));
        let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), 26));
        let lo = rat(141, 1) / &scale;
        let hi = rat(158, 1) / &scale;
        assert!(r[1].gap.is_subset_of(&RationalInterval::new(lo, hi).unwrap()));
        assert!(r[0].mvt_bound > rat(141421, 100000) && r[0].mvt_bound < rat(14143, 10000));
    }

    #[test]
    fn demo_chain_k2() {
        let r = demo(&[2, 3]);
        let c = measure_growth_constant(&r).unwrap();
        let rep = verify_theorem_chain(&r, &c, 2).unwrap();
        let e = &rep.entries[0];
        assert!(e.e.is_subset_of(&RationalInterval::new(rat(155, 100), rat(160, 100)).unwrap()));
        assert!(e.eq6 && e.eq7 && e.eq9);
        assert_eq!(e.ratio7, rat(5000, 1) / Rational::from_integer(num_traits::pow(BigInt::from(100), 8)));
        assert_eq!(e.eq12, Some(true));
        assert!(rep.monotone_e);
        let j = e.to_json();
        assert_eq!(j["h_gamma"], "5000");
        assert_eq!(j["checks"]["eq9"], true);
    }

    #[test]
    fn identity_map_reuses_convergent() {
        let xi = LiouvilleNumber::parse("series:10:factorial").unwrap();
        let f = parse_map(&NumberField::rationals(), "x").unwrap();
        let r = approximant_sequence(&xi, &f, &[1, 2, 3], 4).unwrap();
        for rec in &r {
            let conv = xi.convergent(rec.k).unwrap();
            assert_eq!(rec.gamma.as_rational(), Some(conv.value.clone()));
            assert_eq!(rec.gap, conv.gap);
        }
        let c = GrowthConstant::new(rat(11, 10)).unwrap();
        let rep = verify_theorem_chain(&r, &c, 1).unwrap();
        for (e, rec) in rep.entries.iter().zip(&r) {
            assert_eq!(e.e, rec.omega);
        }
    }

    #[test]
    fn growth_constant_and_errors() {
        assert_eq!(GrowthConstant::new(int(1)).unwrap_err(), MapError::GrowthConstantNotAboveOne);
        assert_eq!(measure_growth_constant(&[]).unwrap_err(), MapError::EmptyRecords);
        let c = GrowthConstant::new(rat(11, 10)).unwrap();
        assert_eq!(verify_theorem_chain(&[], &c, 2).unwrap_err(), MapError::EmptyRecords);
        let r = demo(&[2, 3, 4]);
        let c = measure_growth_constant(&r).unwrap();
        assert!(c.value() > &int(1) && c.value() < &rat(11, 10));
    }
}

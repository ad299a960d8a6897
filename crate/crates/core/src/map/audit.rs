//! Separation audit of `F(xi)` against all algebraic numbers of lower
//! degree in a bounded window.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use super::chain::{ApproximantRecord, GrowthConstant};
use super::rational_map::{map_enclosure_at, RationalMap};
use super::MapError;
use crate::algebraic::{bombieri_bound, enumerate_algebraics, AlgebraicNumber, BoundSpec};
use crate::exact::log::{log2_int, log2_interval};
use crate::exact::rational::{self, Rational};
use crate::exact::{refine_root, RationalInterval};
use crate::liouville::LiouvilleNumber;

/// A distance is accepted once its relative width is at most `2^-16`.
const DIST_REL_BITS: i64 = 16;
/// Exponents are rounded outward to `2^-EXP_BITS`.
const EXP_BITS: i64 = 32;

pub type MapOfNumber = dyn Fn(&Rational) -> Result<RationalInterval, MapError> + Sync;

/// `width -> enclosure of F(xi)` of width at most `width`. Uses canonical
/// `theta` enclosures, so equal widths always give equal intervals.
pub fn map_of_number(f: RationalMap, xi: LiouvilleNumber) -> impl Fn(&Rational) -> Result<RationalInterval, MapError> + Sync {
    move |width: &Rational| {
        let mut w = width / rational::int(4);
        for _ in 0..64 {
            let x = xi.enclosure(&w)?;
            let theta = f.field().theta_enclosure_canonical(&w)?;
            let e = map_enclosure_at(&f, &x, &theta)?;
            if rational::le(&e.width(), width) {
                return Ok(e);
            }
            w = rational::mul_pow2(&w, -16);
        }
        Err(MapError::RefinementBudgetExceeded)
    }
}

fn level_width(j: usize) -> Rational {
    rational::mul_pow2(&Rational::one(), -(64i64 << j))
}

/// Enclosures of one algebraic number at the widths `2^(-64 * 2^j)`.
struct Levels<'a> {
    number: &'a AlgebraicNumber,
    cells: Vec<OnceLock<RationalInterval>>,
}

impl<'a> Levels<'a> {
    fn new(number: &'a AlgebraicNumber, depth: usize) -> Self {
        Self { number, cells: (0..depth).map(|_| OnceLock::new()).collect() }
    }

    fn get(&self, j: usize) -> Result<&RationalInterval, MapError> {
        if let Some(v) = self.cells[j].get() {
            return Ok(v);
        }
        let iv = refine_root(self.number.min_poly(), self.number.iso(), &level_width(j))?;
        Ok(self.cells[j].get_or_init(|| iv))
    }
}

fn enclose_at(number: &AlgebraicNumber, j: usize) -> Result<RationalInterval, MapError> {
    Ok(refine_root(number.min_poly(), number.iso(), &level_width(j))?)
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditWorst {
    pub candidate: AlgebraicNumber,
    pub distance: RationalInterval,
    pub exponent: RationalInterval,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub m: usize,
    pub spec: BoundSpec,
    pub candidates: usize,
    /// Candidates of height at least 2 with a certified exponent.
    pub audited: usize,
    pub worst: Option<AuditWorst>,
    pub all_separated: bool,
    pub triangle_pairs: usize,
    pub triangle_violations: usize,
    /// `m + 16 C n m^6`.
    #[serde(serialize_with = "rational::serialize")]
    pub koksma_bound: Rational,
}

impl AuditReport {
    pub fn passes(&self) -> bool {
        self.all_separated && self.triangle_violations == 0
    }
}

struct CandidateResult {
    distance: Option<RationalInterval>,
    exponent: Option<RationalInterval>,
    pairs: usize,
    violations: usize,
}

/// Refines `target - candidate` until its sign is certain and its relative
/// width is at most `2^-DIST_REL_BITS`, or the levels run out.
fn distance(
    target: &(dyn Fn(usize) -> Result<RationalInterval, MapError> + Sync),
    cand: &AlgebraicNumber,
    depth: usize,
) -> Result<Option<RationalInterval>, MapError> {
    let mut last = None;
    for j in 0..depth {
        let d = target(j)?.sub(&enclose_at(cand, j)?).abs();
        if d.lo().is_positive() {
            if rational::le(&d.width(), &rational::mul_pow2(d.lo(), -DIST_REL_BITS)) {
                return Ok(Some(d));
            }
            last = Some(d);
        }
    }
    Ok(last)
}

/// Whether `|cand - gamma| > bound` is certified within `depth` levels.
fn separated_beyond(cand: &AlgebraicNumber, gamma: &Levels<'_>, bound: &Rational, depth: usize) -> Result<bool, MapError> {
    for j in 0..depth {
        let d = enclose_at(cand, j)?.sub(gamma.get(j)?).abs();
        if rational::lt(bound, d.lo()) {
            return Ok(true);
        }
        if rational::le(d.hi(), bound) {
            return Ok(false);
        }
    }
    Ok(false)
}

/// Audits every algebraic number of degree at most `n` in `spec` against
/// `F(xi)` and, for each record `gamma_k`, the separation bound between the
/// candidate and `gamma_k`. `depth` is the number of refinement levels
/// `2^(-64 * 2^j)` tried per comparison.
pub fn lower_degree_audit(
    f_of_xi: &MapOfNumber,
    n: usize,
    spec: &BoundSpec,
    records: &[ApproximantRecord],
    c: &GrowthConstant,
    m: usize,
    depth: usize,
) -> Result<AuditReport, MapError> {
    if n >= m {
        return Err(MapError::DegreeNotBelowM { n, m });
    }
    if spec.max_degree != n {
        return Err(MapError::Parse(format!("audit window degree {} differs from n = {n}", spec.max_degree)));
    }
    let depth = depth.max(1);
    let target_cells: Vec<OnceLock<RationalInterval>> = (0..depth).map(|_| OnceLock::new()).collect();
    let target = |j: usize| -> Result<RationalInterval, MapError> {
        if let Some(v) = target_cells[j].get() {
            return Ok(v.clone());
        }
        let iv = f_of_xi(&level_width(j))?;
        Ok(target_cells[j].get_or_init(|| iv).clone())
    };
    let record_levels: Vec<Levels<'_>> = records.iter().map(|r| Levels::new(&r.gamma, depth)).collect();
    let candidates = enumerate_algebraics(spec);
    let results = candidates
        .par_iter()
        .map(|cand| -> Result<CandidateResult, MapError> {
            let h = cand.height();
            let d = distance(&target, cand, depth)?;
            let exponent = match &d {
                Some(d) if h > BigInt::one() => Some(log2_interval(d)?.neg().div(&log2_int(&h))?.round_outward_abs(EXP_BITS)),
                _ => None,
            };
            let mut pairs = 0;
            let mut violations = 0;
            for (r, lv) in records.iter().zip(&record_levels) {
                if cand.same_number(&r.gamma) {
                    continue;
                }
                pairs += 1;
                let bound = bombieri_bound(cand.degree(), &h, r.gamma.degree(), &r.h_gamma);
                if !separated_beyond(cand, lv, &bound, depth)? {
                    violations += 1;
                }
            }
            Ok(CandidateResult { distance: d, exponent, pairs, violations })
        })
        .collect::<Result<Vec<_>, MapError>>()?;

    let mut worst: Option<(usize, &RationalInterval)> = None;
    for (i, r) in results.iter().enumerate() {
        if let Some(e) = &r.exponent {
            if worst.is_none_or(|(_, w)| rational::lt(w.hi(), e.hi())) {
                worst = Some((i, e));
            }
        }
    }
    let worst = worst.map(|(i, e)| AuditWorst {
        candidate: candidates[i].clone(),
        distance: results[i].distance.clone().expect("exponent implies distance"),
        exponent: e.clone(),
    });
    let m_r = Rational::from_integer(BigInt::from(m));
    let koksma_bound = &m_r + Rational::from_integer(BigInt::from(16 * n)) * c.value() * num_traits::pow(m_r.clone(), 6);
    Ok(AuditReport {
        n,
        m,
        spec: *spec,
        candidates: candidates.len(),
        audited: results.iter().filter(|r| r.exponent.is_some()).count(),
        worst,
        all_separated: results.iter().all(|r| r.distance.is_some()),
        triangle_pairs: results.iter().map(|r| r.pairs).sum(),
        triangle_violations: results.iter().map(|r| r.violations).sum(),
        koksma_bound,
    })
}

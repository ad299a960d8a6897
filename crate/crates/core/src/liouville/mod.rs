//! Computable Liouville-type numbers: lacunary series, prescribed continued
//! fractions, certified approximation exponents and growth classifiers.

pub mod cf;
pub mod schedule;
pub mod series;
pub mod witness;

pub use cf::{build_strong_cf, cf_expansion, CFNumber};
pub use schedule::ExponentSchedule;
pub use series::{Convergent, SeriesNumber};
pub use witness::{classify_witness, liouville_prefix_check, strong_prefix_check, ClassVerdict, Witness, WitnessEntry};

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::rational::{self, Rational};
use crate::exact::{ExactError, RationalInterval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiouvilleError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("base must be at least 2 (got {0})")]
    InvalidBase(u64),
    #[error("schedule value v({0}) overflows 64 bits")]
    ScheduleOverflow(usize),
    #[error("explicit schedule has no entry v({0})")]
    ScheduleExhausted(usize),
    #[error("schedule is not strictly increasing at n = {0}")]
    NotIncreasing(usize),
    #[error("index {0} is out of range")]
    InvalidIndex(usize),
    #[error("not enough entries for this check")]
    TooFewEntries,
    #[error("constant C must be positive")]
    NonPositiveConstant,
    #[error("epsilon must be non-negative")]
    NegativeEpsilon,
    #[error("refinement budget exceeded")]
    RefinementBudgetExceeded,
    #[error("integer too large to materialize")]
    TooLarge,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Default number of quotients for the `strong:` number spec.
const DEFAULT_STRONG_COUNT: usize = 5;

/// Either kind of constructible number.
#[derive(Clone, Debug, PartialEq)]
pub enum LiouvilleNumber {
    Series(SeriesNumber),
    Cf(CFNumber),
}

impl LiouvilleNumber {
    /// Accepts `series:<base>:<schedule>`, `cf:<a0>,<a1>,...`,
    /// `strong:<n>[:<count>]` (with `n` either `k` or an integer exponent),
    /// or the JSON forms `{"kind":"series",...}` / `{"kind":"cf",...}`.
    pub fn parse(spec: &str) -> Result<Self, LiouvilleError> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            let v: Value = serde_json::from_str(spec).map_err(|e| LiouvilleError::Parse(e.to_string()))?;
            return Self::from_json(&v);
        }
        let (kind, rest) = spec.split_once(':').ok_or_else(|| LiouvilleError::Parse(format!("bad number spec '{spec}'")))?;
        match kind {
            "series" => {
                let (base, sched) = rest.split_once(':').ok_or_else(|| LiouvilleError::Parse(format!("expected series:<base>:<schedule>, got '{spec}'")))?;
                let base: u64 = base.trim().parse().map_err(|_| LiouvilleError::Parse(format!("bad base '{base}'")))?;
                Ok(Self::Series(SeriesNumber::new(base, sched.parse()?)?))
            }
            "cf" => {
                let q = rest
                    .split(',')
                    .map(|t| t.trim().parse::<BigInt>().map_err(|_| LiouvilleError::Parse(format!("bad quotient '{t}'"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Self::Cf(CFNumber::new(q)?))
            }
            "strong" => {
                let (n, count) = match rest.split_once(':') {
                    Some((n, c)) => (n, c.trim().parse::<usize>().map_err(|_| LiouvilleError::Parse(format!("bad count '{c}'")))?),
                    None => (rest, DEFAULT_STRONG_COUNT),
                };
                let cf = if n.trim() == "k" {
                    build_strong_cf(|k| k as u32, count)?
                } else {
                    let e: u32 = n.trim().parse().map_err(|_| LiouvilleError::Parse(format!("bad exponent '{n}'")))?;
                    build_strong_cf(|_| e, count)?
                };
                Ok(Self::Cf(cf))
            }
            _ => Err(LiouvilleError::Parse(format!("unknown number kind '{kind}'"))),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, LiouvilleError> {
        let bad = |m: &str| LiouvilleError::Parse(m.to_string());
        match v.get("kind").and_then(Value::as_str) {
            Some("series") => {
                let base = v.get("base").and_then(Value::as_u64).ok_or_else(|| bad("series needs integer 'base'"))?;
                let sched = v.get("schedule").and_then(Value::as_str).ok_or_else(|| bad("series needs 'schedule'"))?;
                Ok(Self::Series(SeriesNumber::new(base, sched.parse()?)?))
            }
            Some("cf") => {
                let q = v
                    .get("quotients")
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("cf needs 'quotients'"))?
                    .iter()
                    .map(|x| match x {
                        Value::Number(n) => n.to_string().parse::<BigInt>().map_err(|_| bad("bad quotient")),
                        Value::String(s) => s.parse::<BigInt>().map_err(|_| bad("bad quotient")),
                        _ => Err(bad("bad quotient")),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Self::Cf(CFNumber::new(q)?))
            }
            _ => Err(bad("number JSON needs kind 'series' or 'cf'")),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::Series(s) => json!({"kind": "series", "base": s.base(), "schedule": s.schedule().to_string()}),
            Self::Cf(c) => json!({"kind": "cf", "quotients": c.quotients().iter().map(|a| a.to_string()).collect::<Vec<_>>()}),
        }
    }

    pub fn convergent(&self, k: usize) -> Result<Convergent, LiouvilleError> {
        match self {
            Self::Series(s) => s.convergent(k),
            Self::Cf(c) => c.convergent(k),
        }
    }

    pub fn omega_measured(&self, k: usize) -> Result<RationalInterval, LiouvilleError> {
        match self {
            Self::Series(s) => s.omega_measured(k),
            Self::Cf(c) => c.omega_measured(k),
        }
    }

    /// Enclosure of the number of width at most `width`. A continued
    /// fraction prefix can only be refined down to its materialized depth.
    pub fn enclosure(&self, width: &Rational) -> Result<RationalInterval, LiouvilleError> {
        match self {
            Self::Series(s) => s.enclosure(width),
            Self::Cf(c) => {
                let iv = c.enclosure();
                if rational::le(&iv.width(), width) {
                    Ok(iv)
                } else {
                    Err(LiouvilleError::RefinementBudgetExceeded)
                }
            }
        }
    }

    pub fn witness(&self, ks: &[usize]) -> Result<Witness, LiouvilleError> {
        match self {
            Self::Series(s) => Witness::from_series(s, ks),
            Self::Cf(c) => Witness::from_cf(c, ks),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_specs() {
        let l = LiouvilleNumber::parse("series:10:factorial").unwrap();
        assert_eq!(l, LiouvilleNumber::Series(SeriesNumber::liouville_constant()));
        let j = LiouvilleNumber::parse(r#"{"kind":"series","base":10,"schedule":"factorial"}"#).unwrap();
        assert_eq!(j, l);
        assert_eq!(LiouvilleNumber::from_json(&l.to_json()).unwrap(), l);
        let c = LiouvilleNumber::parse("cf:0,9,11,99").unwrap();
        assert_eq!(LiouvilleNumber::parse(r#"{"kind":"cf","quotients":[0,9,"11",99]}"#).unwrap(), c);
        let s = LiouvilleNumber::parse("strong:k:4").unwrap();
        assert_eq!(s, LiouvilleNumber::Cf(build_strong_cf(|k| k as u32, 4).unwrap()));
        assert!(LiouvilleNumber::parse("series:1:factorial").is_err());
        assert!(LiouvilleNumber::parse("pi").is_err());
    }
}

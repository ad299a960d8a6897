//! Lacunary series `xi = sum_{n>=1} a^(-v(n))`.

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::Serialize;

use super::schedule::ExponentSchedule;
use super::LiouvilleError;
use crate::exact::rational::{self, Rational};
use crate::exact::RationalInterval;

/// Refuse powers `a^v` with more bits than this.
const MAX_POWER_BITS: u64 = 1 << 30;

/// A partial approximation `p_k / q_k` together with an enclosure of
/// `|xi - p_k / q_k|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Convergent {
    pub k: usize,
    #[serde(serialize_with = "rational::serialize")]
    pub value: Rational,
    pub gap: RationalInterval,
}

impl Convergent {
    /// `max(|p|, q)`.
    pub fn height(&self) -> BigInt {
        rational::height(&self.value)
    }
}

#[derive(Debug)]
pub struct SeriesNumber {
    base: u64,
    schedule: ExponentSchedule,
    /// Numerators `N_k` of the partial sums `N_k / a^v(k)`, from `k = 1`.
    numerators: Mutex<Vec<BigInt>>,
}

impl Clone for SeriesNumber {
    fn clone(&self) -> Self {
        let nums = self.numerators.lock().expect("series cache poisoned").clone();
        Self { base: self.base, schedule: self.schedule.clone(), numerators: Mutex::new(nums) }
    }
}

impl PartialEq for SeriesNumber {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.schedule == other.schedule
    }
}

impl SeriesNumber {
    pub fn new(base: u64, schedule: ExponentSchedule) -> Result<Self, LiouvilleError> {
        if base < 2 {
            return Err(LiouvilleError::InvalidBase(base));
        }
        Ok(Self { base, schedule, numerators: Mutex::new(Vec::new()) })
    }

    /// The number `sum 10^(-n!)`.
    pub fn liouville_constant() -> Self {
        Self::new(10, ExponentSchedule::Factorial).expect("valid base")
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn schedule(&self) -> &ExponentSchedule {
        &self.schedule
    }

    pub fn v(&self, n: usize) -> Result<u64, LiouvilleError> {
        self.schedule.v(n)
    }

    fn power(&self, e: u64) -> Result<BigInt, LiouvilleError> {
        let bits = BigUint::from(self.base).bits();
        if e.saturating_mul(bits) > MAX_POWER_BITS {
            return Err(LiouvilleError::TooLarge);
        }
        Ok(num_traits::pow(BigInt::from(self.base), e as usize))
    }

    /// `a^(-v(k+1))`, the lower tail bound after `k` terms.
    pub fn tail_lower(&self, k: usize) -> Result<Rational, LiouvilleError> {
        Ok(Rational::new(BigInt::one(), self.power(self.v(k + 1)?)?))
    }

    fn tail(&self, k: usize) -> Result<RationalInterval, LiouvilleError> {
        let lo = self.tail_lower(k)?;
        let a = BigInt::from(self.base);
        let hi = &lo * Rational::new(a.clone(), a - 1);
        Ok(RationalInterval::new(lo, hi)?)
    }

    /// `sum_{n<=k} a^(-v(n))` in lowest terms.
    pub fn partial_sum(&self, k: usize) -> Result<Rational, LiouvilleError> {
        if k == 0 {
            return Err(LiouvilleError::InvalidIndex(0));
        }
        let mut nums = self.numerators.lock().expect("series cache poisoned");
        while nums.len() < k {
            let n = nums.len() + 1;
            let vn = self.v(n)?;
            let next = match nums.last() {
                None => BigInt::one(),
                Some(prev) => {
                    let vp = self.v(n - 1)?;
                    if vn <= vp {
                        return Err(LiouvilleError::NotIncreasing(n));
                    }
                    prev * self.power(vn - vp)? + 1
                }
            };
            nums.push(next);
        }
        let num = nums[k - 1].clone();
        drop(nums);
        Ok(Rational::new(num, self.power(self.v(k)?)?))
    }

    /// The k-th partial sum with its certified tail gap
    /// `[a^(-v(k+1)), a/(a-1) a^(-v(k+1))]`.
    pub fn convergent(&self, k: usize) -> Result<Convergent, LiouvilleError> {
        let value = self.partial_sum(k)?;
        Ok(Convergent { k, value, gap: self.tail(k)? })
    }

    /// Enclosure of `xi` from the first `k` terms.
    pub fn enclosure_at(&self, k: usize) -> Result<RationalInterval, LiouvilleError> {
        let s = RationalInterval::point(self.partial_sum(k)?);
        Ok(s.add(&self.tail(k)?))
    }

    /// Enclosure of `xi` of width at most `width`, using as few terms as
    /// possible.
    pub fn enclosure(&self, width: &Rational) -> Result<RationalInterval, LiouvilleError> {
        if width <= &Rational::zero() {
            return Err(LiouvilleError::Exact(crate::exact::ExactError::NonPositiveWidth));
        }
        let mut k = 1;
        loop {
            let iv = self.enclosure_at(k)?;
            if rational::le(&iv.width(), width) {
                return Ok(iv);
            }
            k += 1;
        }
    }

    /// `u = N/1024` with `a^u >= a/(a-1)`, the smallest such `N`.
    pub fn tail_log_excess(&self) -> Rational {
        const D: u32 = 1024;
        let a = BigUint::from(self.base);
        let a1 = BigUint::from(self.base - 1);
        let lhs = |n: u32| num_traits::pow(a.clone(), n as usize) * num_traits::pow(a1.clone(), D as usize);
        let rhs = num_traits::pow(a.clone(), D as usize);
        // a^(N/D) >= a/(a-1)  <=>  a^N (a-1)^D >= a^D
        let guess = ((self.base as f64 / (self.base - 1) as f64).ln() / (self.base as f64).ln() * D as f64).ceil() as u32;
        let mut n = guess.min(D);
        while n > 0 && lhs(n - 1) >= rhs {
            n -= 1;
        }
        while lhs(n) < rhs {
            n += 1;
        }
        Rational::new(BigInt::from(n), BigInt::from(D))
    }

    /// Certified interval for `omega_k` with `|xi - p_k/q_k| = q_k^(-omega_k)`:
    /// `[(v(k+1) - u) / v(k), v(k+1) / v(k)]`.
    pub fn omega_measured(&self, k: usize) -> Result<RationalInterval, LiouvilleError> {
        let vk = rational::from_big(BigInt::from(self.v(k)?));
        let vk1 = rational::from_big(BigInt::from(self.v(k + 1)?));
        let hi = &vk1 / &vk;
        let lo = (&vk1 - self.tail_log_excess()) / &vk;
        Ok(RationalInterval::new(lo, hi)?)
    }
}

//! Exponent schedules `v(1) < v(2) < ...` for the series `sum a^(-v(n))`.

use std::fmt;
use std::str::FromStr;

use super::LiouvilleError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExponentSchedule {
    /// `v(n) = n!`
    Factorial,
    /// `v(n) = r^n`
    Geometric(u64),
    /// `v(1) = b`, `v(n) = b^v(n-1)`
    Tower(u64),
    /// `v(n) = list[n-1]`
    Explicit(Vec<u64>),
}

impl ExponentSchedule {
    pub fn explicit(list: Vec<u64>) -> Result<Self, LiouvilleError> {
        if list.is_empty() || list[0] == 0 {
            return Err(LiouvilleError::Parse("explicit schedule needs positive entries".into()));
        }
        for (i, w) in list.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(LiouvilleError::NotIncreasing(i + 2));
            }
        }
        Ok(Self::Explicit(list))
    }

    /// `v(n)` for `n >= 1`.
    pub fn v(&self, n: usize) -> Result<u64, LiouvilleError> {
        if n == 0 {
            return Err(LiouvilleError::InvalidIndex(0));
        }
        let overflow = || LiouvilleError::ScheduleOverflow(n);
        match self {
            Self::Factorial => (1..=n as u64).try_fold(1u64, |acc, i| acc.checked_mul(i)).ok_or_else(overflow),
            Self::Geometric(r) => r.checked_pow(u32::try_from(n).map_err(|_| overflow())?).ok_or_else(overflow),
            Self::Tower(b) => {
                let mut v = *b;
                for _ in 1..n {
                    v = b.checked_pow(u32::try_from(v).map_err(|_| overflow())?).ok_or_else(overflow)?;
                }
                Ok(v)
            }
            Self::Explicit(list) => list.get(n - 1).copied().ok_or(LiouvilleError::ScheduleExhausted(n)),
        }
    }
}

impl fmt::Display for ExponentSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Factorial => write!(f, "factorial"),
            Self::Geometric(r) => write!(f, "geometric:{r}"),
            Self::Tower(b) => write!(f, "tower:{b}"),
            Self::Explicit(list) => {
                let items: Vec<String> = list.iter().map(u64::to_string).collect();
                write!(f, "list:{}", items.join(","))
            }
        }
    }
}

impl FromStr for ExponentSchedule {
    type Err = LiouvilleError;

    /// `"factorial"`, `"geometric:3"`, `"tower:2"`, `"list:1,2,6,24"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let int_arg = |min: u64| -> Result<u64, LiouvilleError> {
            let v: u64 = arg.trim().parse().map_err(|_| LiouvilleError::Parse(format!("bad schedule parameter in '{s}'")))?;
            if v < min {
                return Err(LiouvilleError::Parse(format!("schedule parameter must be at least {min}: '{s}'")));
            }
            Ok(v)
        };
        match kind {
            "factorial" if arg.is_empty() => Ok(Self::Factorial),
            "geometric" => Ok(Self::Geometric(int_arg(2)?)),
            "tower" => Ok(Self::Tower(int_arg(2)?)),
            "list" => {
                let list = arg
                    .split(',')
                    .map(|t| t.trim().parse::<u64>().map_err(|_| LiouvilleError::Parse(format!("bad list entry '{t}'"))))
                    .collect::<Result<Vec<_>, _>>()?;
                Self::explicit(list)
            }
            _ => Err(LiouvilleError::Parse(format!("unknown schedule '{s}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_values() {
        let f = ExponentSchedule::Factorial;
        assert_eq!((1..=6).map(|n| f.v(n).unwrap()).collect::<Vec<_>>(), vec![1, 2, 6, 24, 120, 720]);
        let g = ExponentSchedule::Geometric(3);
        assert_eq!(g.v(3).unwrap(), 27);
        let t = ExponentSchedule::Tower(2);
        assert_eq!((1..=4).map(|n| t.v(n).unwrap()).collect::<Vec<_>>(), vec![2, 4, 16, 65536]);
        assert_eq!(t.v(5).unwrap_err(), LiouvilleError::ScheduleOverflow(5));
        assert_eq!(f.v(21).unwrap_err(), LiouvilleError::ScheduleOverflow(21));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["factorial", "geometric:3", "tower:2", "list:1,2,6,24"] {
            assert_eq!(s.parse::<ExponentSchedule>().unwrap().to_string(), s);
        }
        assert!("list:1,1".parse::<ExponentSchedule>().is_err());
        assert!("geometric:1".parse::<ExponentSchedule>().is_err());
        assert!("fibonacci".parse::<ExponentSchedule>().is_err());
        let l: ExponentSchedule = "list:1,2".parse().unwrap();
        assert_eq!(l.v(3).unwrap_err(), LiouvilleError::ScheduleExhausted(3));
    }
}

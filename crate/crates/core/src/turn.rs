//! Exact rotation angles measured in full turns.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, ScfError};

/// An angle θ/2π reduced into `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Turn(Ratio<i64>);

impl Turn {
    pub const ZERO: Turn = Turn(Ratio::new_raw(0, 1));
    pub const HALF: Turn = Turn(Ratio::new_raw(1, 2));

    /// For constants already in lowest terms within `[0, 1)`.
    pub(crate) const fn frac_const(numer: i64, denom: i64) -> Self {
        Turn(Ratio::new_raw(numer, denom))
    }

    /// Builds `numer/denom mod 1`. Fails on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(ScfError::invalid("turn with zero denominator"));
        }
        Ok(Self::from_ratio(Ratio::new(numer, denom)))
    }

    /// Like [`Turn::new`] for callers that already know `denom > 0`.
    pub fn frac(numer: i64, denom: i64) -> Self {
        assert!(denom > 0, "turn denominator must be positive");
        Self::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Self {
        let numer = r.numer().mod_floor(r.denom());
        Turn(Ratio::new(numer, *r.denom()))
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    /// The inverse rotation, `1 - t` (and `0` for `0`).
    pub fn negate(self) -> Self {
        Self::from_ratio(-self.0)
    }

    /// `min(t, 1 - t)`: identifies a rotation with its inverse.
    pub fn fold(self) -> Self {
        self.min(self.negate())
    }

    /// Whether `fold` changes the value, i.e. `t > 1/2`.
    pub fn folds(self) -> bool {
        self > Turn::HALF
    }

    /// Fixed by negation: `0` or `1/2`.
    pub fn is_self_inverse(self) -> bool {
        self == Turn::ZERO || self == Turn::HALF
    }

    pub fn scale(self, c: i64) -> Self {
        Self::from_ratio(self.0 * c)
    }
}

impl Add for Turn {
    type Output = Turn;

    fn add(self, other: Turn) -> Turn {
        Turn::from_ratio(self.0 + other.0)
    }
}

impl Sum for Turn {
    fn sum<I: Iterator<Item = Turn>>(iter: I) -> Turn {
        iter.fold(Turn::ZERO, Add::add)
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Turn {
    type Err = ScfError;

    /// Accepts `p/q` or a bare integer; the value is reduced mod 1.
    fn from_str(s: &str) -> Result<Self> {
        let err = || ScfError::Parse {
            what: "turn",
            input: s.to_string(),
        };
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i64 = n.parse().map_err(|_| err())?;
        let d: i64 = d.parse().map_err(|_| err())?;
        if d == 0 {
            return Err(err());
        }
        Turn::new(n, d)
    }
}

impl Serialize for Turn {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Turn {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma separated list of turns, e.g. `1/5,0,3/4`.
pub fn parse_turns(s: &str) -> Result<Vec<Turn>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

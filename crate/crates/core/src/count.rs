//! Extended counts: dimensions that may be infinite, or only bounded below
//! when they come out of a truncated computation.

use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtCount {
    Finite(u64),
    Infinite,
    /// The true value is at least this bound (possibly infinite).
    AtLeast(u64),
}

impl ExtCount {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtCount::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtCount::Infinite)
    }

    /// Whether the value is exact (`Finite` or `Infinite`).
    pub fn is_exact(&self) -> bool {
        !matches!(self, ExtCount::AtLeast(_))
    }

    pub fn finite(&self) -> Option<u64> {
        match *self {
            ExtCount::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// Multiplies by a positive integer weight; a zero weight gives `Finite(0)`.
    pub fn scale(self, k: u64) -> ExtCount {
        if k == 0 {
            return ExtCount::Finite(0);
        }
        match self {
            ExtCount::Finite(n) => ExtCount::Finite(n * k),
            ExtCount::AtLeast(n) => ExtCount::AtLeast(n * k),
            ExtCount::Infinite => ExtCount::Infinite,
        }
    }

    /// Lower bound carried by the value (`u64::MAX` for `Infinite`).
    pub fn lower_bound(&self) -> u64 {
        match *self {
            ExtCount::Finite(n) | ExtCount::AtLeast(n) => n,
            ExtCount::Infinite => u64::MAX,
        }
    }

    /// True when the value is known to be at least `n`.
    pub fn is_at_least(&self, n: u64) -> bool {
        self.lower_bound() >= n
    }

    /// Ordering on exact values, with `Infinite` above every finite value.
    /// `None` if either side is a lower bound.
    pub fn cmp_exact(&self, other: &ExtCount) -> Option<std::cmp::Ordering> {
        use ExtCount::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(a.cmp(b)),
            (Finite(_), Infinite) => Some(std::cmp::Ordering::Less),
            (Infinite, Finite(_)) => Some(std::cmp::Ordering::Greater),
            (Infinite, Infinite) => Some(std::cmp::Ordering::Equal),
            _ => None,
        }
    }

    /// Minimum of exact values; `None` if any input is a lower bound or the
    /// iterator is empty.
    pub fn min_exact<I: IntoIterator<Item = ExtCount>>(values: I) -> Option<ExtCount> {
        let mut best: Option<ExtCount> = None;
        for v in values {
            if !v.is_exact() {
                return None;
            }
            best = Some(match best {
                None => v,
                Some(b) => {
                    if v.cmp_exact(&b) == Some(std::cmp::Ordering::Less) {
                        v
                    } else {
                        b
                    }
                }
            });
        }
        best
    }
}

impl Add for ExtCount {
    type Output = ExtCount;

    fn add(self, rhs: ExtCount) -> ExtCount {
        use ExtCount::*;
        match (self, rhs) {
            (Infinite, _) | (_, Infinite) => Infinite,
            (Finite(a), Finite(b)) => Finite(a + b),
            (Finite(a), AtLeast(b)) | (AtLeast(a), Finite(b)) | (AtLeast(a), AtLeast(b)) => {
                AtLeast(a + b)
            }
        }
    }
}

impl Sum for ExtCount {
    fn sum<I: Iterator<Item = ExtCount>>(iter: I) -> ExtCount {
        iter.fold(ExtCount::Finite(0), |a, b| a + b)
    }
}

impl From<u64> for ExtCount {
    fn from(n: u64) -> Self {
        ExtCount::Finite(n)
    }
}

impl fmt::Display for ExtCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtCount::Finite(n) => write!(f, "{n}"),
            ExtCount::Infinite => f.write_str("inf"),
            ExtCount::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

impl FromStr for ExtCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::invalid(format!("not a count: {s:?}"));
        if s == "inf" || s == "∞" || s == "infinity" {
            Ok(ExtCount::Infinite)
        } else if let Some(rest) = s.strip_prefix(">=") {
            rest.trim()
                .parse()
                .map(ExtCount::AtLeast)
                .map_err(|_| bad())
        } else {
            s.parse().map(ExtCount::Finite).map_err(|_| bad())
        }
    }
}

// Finite values serialise as JSON numbers, the others as "inf" / ">=D".
impl Serialize for ExtCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtCount::Finite(n) => serializer.serialize_u64(*n),
            other => serializer.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExtCount {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CountVisitor;

        impl Visitor<'_> for CountVisitor {
            type Value = ExtCount;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a natural number, \"inf\" or \">=N\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtCount, E> {
                Ok(ExtCount::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtCount, E> {
                u64::try_from(v)
                    .map(ExtCount::Finite)
                    .map_err(|_| E::custom("negative count"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtCount, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(CountVisitor)
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("interval [{left}, {right}] is empty or degenerate (need left < right)")]
pub struct IntervalError {
    pub left: Rational,
    pub right: Rational,
}

/// Closed interval `[left, right]` with `left < right`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Interval {
    left: Rational,
    right: Rational,
}

impl Interval {
    pub fn new(left: Rational, right: Rational) -> Result<Self, IntervalError> {
        if left < right {
            Ok(Interval { left, right })
        } else {
            Err(IntervalError { left, right })
        }
    }

    /// `[left, left + length]`.
    pub fn with_length(left: Rational, length: &Rational) -> Result<Self, IntervalError> {
        let right = &left + length;
        Interval::new(left, right)
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn length(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        &self.left <= x && x <= &self.right
    }

    /// `other` lies entirely inside `self`.
    pub fn covers(&self, other: &Interval) -> bool {
        self.left <= other.left && other.right <= self.right
    }

    pub fn shifted(&self, offset: &Rational) -> Interval {
        Interval {
            left: &self.left + offset,
            right: &self.right + offset,
        }
    }
}

/// Closed-interval intersection test: touching endpoints intersect.
pub fn intersects(a: &Interval, b: &Interval) -> bool {
    a.left <= b.right && b.left <= a.right
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            left: Rational,
            right: Rational,
        }
        let raw = Raw::deserialize(deserializer)?;
        Interval::new(raw.left, raw.right).map_err(serde::de::Error::custom)
    }
}

/// Test and example helper: `iv("0", "3/2")`. Panics on bad input.
pub fn iv(left: &str, right: &str) -> Interval {
    Interval::new(crate::rational::q(left), crate::rational::q(right)).expect("valid interval")
}

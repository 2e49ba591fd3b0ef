//! Parameter recurrences of the four lifting constructions, iterated from the
//! `(1, 1, 1)` clique schema, with their closed forms and limits.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Lower32,
    Lower53,
    Lower74,
    Lower52,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("unknown family {0:?} (expected lower32, lower53, lower74 or lower52)")]
    UnknownFamily(String),
    #[error("gamma must lie strictly between 0 and 1, got {0}")]
    Gamma(Rational),
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Lower32, Family::Lower53, Family::Lower74, Family::Lower52];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Lower32 => "lower32",
            Family::Lower53 => "lower53",
            Family::Lower74 => "lower74",
            Family::Lower52 => "lower52",
        })
    }
}

impl FromStr for Family {
    type Err = RecurrenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.to_string() == s.trim())
            .ok_or_else(|| RecurrenceError::UnknownFamily(s.to_string()))
    }
}

fn check_gamma(gamma: &Rational) -> Result<(), RecurrenceError> {
    if gamma.is_positive() && gamma < &Rational::one() {
        Ok(())
    } else {
        Err(RecurrenceError::Gamma(gamma.clone()))
    }
}

/// Smallest `n` with `(1 + gamma/3)^n >= 5/2 - gamma`, i.e.
/// `ceil(log(5/2 - gamma) / log(1 + gamma/3))` computed without rounding.
pub fn split_depth(gamma: &Rational) -> Result<u32, RecurrenceError> {
    check_gamma(gamma)?;
    let base = Rational::one() + gamma / &Rational::from(3);
    let goal = Rational::new(5, 2) - gamma;
    let mut power = Rational::one();
    let mut n = 0;
    while power < goal {
        power = power * &base;
        n += 1;
    }
    Ok(n)
}

/// One application of the family's `alpha` map.
pub fn step(family: Family, alpha: &Rational, gamma: &Rational) -> Rational {
    let one = Rational::one();
    let two = Rational::from(2);
    match family {
        Family::Lower32 => &two - &(alpha + &one).recip(),
        Family::Lower53 => &two - &(alpha + &two).recip(),
        Family::Lower74 => &two - &(alpha * &two + two.clone()).recip(),
        Family::Lower52 => Rational::new(5, 4) + (&one - gamma) * alpha / two,
    }
}

/// Exact integer part of a region or length bound (the `+eps` is implied).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Size {
    Plain(BigInt),
    PowerOfFour(u64),
}

impl Size {
    pub fn value(&self) -> BigInt {
        match self {
            Size::Plain(v) => v.clone(),
            Size::PowerOfFour(e) => {
                let e = u32::try_from(*e).expect("exponent fits in u32");
                BigInt::from(4).pow(e)
            }
        }
    }
}

impl fmt::Display for Size {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Size::Plain(v) => write!(f, "{v}"),
            Size::PowerOfFour(e) => write!(f, "4^{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub k: u32,
    pub alpha: Rational,
    pub sigma: Size,
    pub region: Size,
    pub closed_form: f64,
}

impl Row {
    /// Difference between the exact recurrence and the floating closed form.
    pub fn discrepancy(&self) -> f64 {
        (self.alpha.to_f64() - self.closed_form).abs()
    }
}

/// Rows `k = 0..=iterations`. `gamma` only matters for `Lower52`.
pub fn table(family: Family, iterations: u32, gamma: &Rational) -> Result<Vec<Row>, RecurrenceError> {
    let depth = match family {
        Family::Lower52 => u64::from(split_depth(gamma)?),
        _ => 0,
    };
    let g = gamma.to_f64();
    let mut alpha = Rational::one();
    let mut sigma = BigInt::from(1);
    let mut region = BigInt::from(1);
    let mut rows = Vec::with_capacity(iterations as usize + 1);
    for k in 0..=iterations {
        let (s, m) = match family {
            Family::Lower52 => (Size::PowerOfFour(u64::from(k) * depth), Size::PowerOfFour(u64::from(k) * depth)),
            _ => (Size::Plain(sigma.clone()), Size::Plain(region.clone())),
        };
        rows.push(Row {
            k,
            alpha: alpha.clone(),
            sigma: s,
            region: m,
            closed_form: closed_form(family, k, g),
        });
        alpha = step(family, &alpha, gamma);
        (sigma, region) = match family {
            Family::Lower32 => (region.clone(), region + 1),
            Family::Lower53 => (region.clone(), region + 2),
            Family::Lower74 => (&region * 2, region * 2 + 2),
            Family::Lower52 => (sigma, region),
        };
    }
    Ok(rows)
}

fn signed_pow(x: f64, n: u32) -> f64 {
    x.powi(n as i32)
}

/// Closed form for `alpha_n`.
pub fn closed_form(family: Family, n: u32, gamma: f64) -> f64 {
    match family {
        Family::Lower32 => {
            // F_{2n+1} / F_{2n} with F_0 = F_1 = 1, via Binet.
            let s5 = 5f64.sqrt();
            let phi = (1.0 + s5) / 2.0;
            let psi = (1.0 - s5) / 2.0;
            let fib = |m: u32| (signed_pow(phi, m + 1) - signed_pow(psi, m + 1)) / s5;
            fib(2 * n + 1) / fib(2 * n)
        }
        Family::Lower53 => two_root_ratio(3f64.sqrt(), 3.0, 2.0, n),
        Family::Lower74 => two_root_ratio(7f64.sqrt(), 4.0, 3.0, n),
        Family::Lower52 => {
            5.0 / (2.0 * (1.0 + gamma))
                - (3.0 - 2.0 * gamma) / (2.0 * (1.0 + gamma)) * signed_pow((1.0 - gamma) / 2.0, n)
        }
    }
}

/// `((s-a)(s-b)^n + (s+a)(-s-b)^n) / ((s-1)(s-b)^n + (s+1)(-s-b)^n)`.
fn two_root_ratio(s: f64, a: f64, b: f64, n: u32) -> f64 {
    let u = signed_pow(s - b, n);
    let v = signed_pow(-s - b, n);
    ((s - a) * u + (s + a) * v) / ((s - 1.0) * u + (s + 1.0) * v)
}

pub fn limit(family: Family, gamma: f64) -> f64 {
    match family {
        Family::Lower32 => (1.0 + 5f64.sqrt()) / 2.0,
        Family::Lower53 => 3f64.sqrt(),
        Family::Lower74 => (1.0 + 7f64.sqrt()) / 2.0,
        Family::Lower52 => 5.0 / (2.0 * (1.0 + gamma)),
    }
}

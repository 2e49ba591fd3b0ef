//! Online coloring algorithms.
//!
//! An algorithm receives intervals one at a time and must color each one
//! immediately and irrevocably.

mod block;
mod first_fit;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::Interval;
use crate::rational::{Rational, RationalError};
use crate::transcript::ColorId;

pub use block::{block_color_bound, phi, select_large_block, small_block_index, BlockAlgorithm, Route};
pub use first_fit::FirstFit;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgorithmError {
    #[error("interval {interval} has length {length}, outside [1, {sigma}]")]
    LengthOutOfRange {
        interval: Interval,
        length: Rational,
        sigma: Rational,
    },
    #[error("block index for {0} does not fit in 64 bits")]
    CoordinateOverflow(Rational),
    #[error("invalid block parameters: {0}")]
    Parameters(String),
    #[error("unknown algorithm `{0}` (expected `firstfit` or `block`)")]
    UnknownName(String),
    #[error(transparent)]
    Rational(#[from] RationalError),
}

pub trait OnlineAlgorithm {
    fn color(&mut self, interval: &Interval) -> Result<ColorId, AlgorithmError>;

    fn name(&self) -> String;
}

impl<A: OnlineAlgorithm + ?Sized> OnlineAlgorithm for Box<A> {
    fn color(&mut self, interval: &Interval) -> Result<ColorId, AlgorithmError> {
        (**self).color(interval)
    }

    fn name(&self) -> String {
        (**self).name()
    }
}

/// Algorithm selection as written on the command line or in grid configs:
/// `firstfit`, `block`, `block(sigma=3/2,b=2)`.
///
/// Unset block parameters are filled from the instance being played: sigma
/// defaults to the strategy's maximum length and `b` to sigma's denominator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum AlgorithmSpec {
    FirstFit,
    Block {
        sigma: Option<Rational>,
        b: Option<u64>,
    },
}

impl AlgorithmSpec {
    pub fn build(&self, default_sigma: &Rational) -> Result<Box<dyn OnlineAlgorithm>, AlgorithmError> {
        match self {
            AlgorithmSpec::FirstFit => Ok(Box::new(FirstFit::new())),
            AlgorithmSpec::Block { sigma, b } => {
                let sigma = sigma.clone().unwrap_or_else(|| default_sigma.clone());
                let b = match b {
                    Some(b) => *b,
                    None => BlockAlgorithm::default_b(&sigma)?,
                };
                Ok(Box::new(BlockAlgorithm::new(sigma, b)?))
            }
        }
    }

    /// Resolved `(sigma, b)` for block specs.
    pub fn block_params(&self, default_sigma: &Rational) -> Option<(Rational, u64)> {
        match self {
            AlgorithmSpec::FirstFit => None,
            AlgorithmSpec::Block { sigma, b } => {
                let sigma = sigma.clone().unwrap_or_else(|| default_sigma.clone());
                let b = b.or_else(|| BlockAlgorithm::default_b(&sigma).ok())?;
                Some((sigma, b))
            }
        }
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgorithmSpec::FirstFit => f.write_str("firstfit"),
            AlgorithmSpec::Block { sigma: None, b: None } => f.write_str("block"),
            AlgorithmSpec::Block { sigma, b } => {
                let mut parts = Vec::new();
                if let Some(s) = sigma {
                    parts.push(format!("sigma={s}"));
                }
                if let Some(b) = b {
                    parts.push(format!("b={b}"));
                }
                write!(f, "block({})", parts.join(","))
            }
        }
    }
}

impl FromStr for AlgorithmSpec {
    type Err = AlgorithmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.trim();
        let (name, args) = match text.split_once('(') {
            Some((name, rest)) => {
                let args = rest
                    .strip_suffix(')')
                    .ok_or_else(|| AlgorithmError::UnknownName(s.to_string()))?;
                (name.trim(), Some(args))
            }
            None => (text, None),
        };
        match name.to_ascii_lowercase().as_str() {
            "firstfit" | "first_fit" | "ff" if args.map_or(true, |a| a.trim().is_empty()) => {
                Ok(AlgorithmSpec::FirstFit)
            }
            "block" => {
                let (mut sigma, mut b) = (None, None);
                for arg in args.unwrap_or("").split(',').map(str::trim).filter(|a| !a.is_empty()) {
                    let (key, value) = arg
                        .split_once('=')
                        .ok_or_else(|| AlgorithmError::Parameters(format!("expected key=value, got `{arg}`")))?;
                    match key.trim() {
                        "sigma" => sigma = Some(value.trim().parse::<Rational>()?),
                        "b" => {
                            b = Some(value.trim().parse::<u64>().map_err(|_| {
                                AlgorithmError::Parameters(format!("b must be a positive integer, got `{value}`"))
                            })?)
                        }
                        other => return Err(AlgorithmError::Parameters(format!("unknown block parameter `{other}`"))),
                    }
                }
                Ok(AlgorithmSpec::Block { sigma, b })
            }
            _ => Err(AlgorithmError::UnknownName(s.to_string())),
        }
    }
}

impl TryFrom<String> for AlgorithmSpec {
    type Error = AlgorithmError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<AlgorithmSpec> for String {
    fn from(value: AlgorithmSpec) -> Self {
        value.to_string()
    }
}

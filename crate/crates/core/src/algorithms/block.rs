//! The block algorithm: `(1 + sigma)`-competitive for rational sigma.
//!
//! The line is tiled by half-open *small blocks* `[i/b, (i+1)/b)` and covered
//! by overlapping *large blocks* `[j/b, j/b + 1)`. Every large block is the
//! union of `b` consecutive small blocks. An interval whose left endpoint lies
//! in small block `i` is routed round-robin (driven by the small counter
//! `S_i`) to one of the `b` large blocks containing it, and receives the
//! structured color `(j mod phi, L_j)` where `L_j` is that block's counter.
//!
//! Large blocks whose indices differ by at least `phi = ceil(b (1 + sigma))`
//! start at least `1 + sigma` apart, so intervals of length at most sigma
//! routed to them cannot meet.

use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;

use super::{AlgorithmError, OnlineAlgorithm};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::transcript::ColorId;

/// `floor(x * b)`: the small block containing `x`.
pub fn small_block_index(x: &Rational, b: u64) -> Result<i64, AlgorithmError> {
    (x * &Rational::from(b))
        .floor()
        .to_i64()
        .ok_or_else(|| AlgorithmError::CoordinateOverflow(x.clone()))
}

/// The unique `j` in `{i-b+1, ..., i}` with `j ≡ counter (mod b)`.
pub fn select_large_block(small: i64, counter: u64, b: u64) -> i64 {
    let b = b as i64;
    let counter = (counter % b as u64) as i64;
    small - (small - counter).rem_euclid(b)
}

/// `ceil(b * (1 + sigma))`.
pub fn phi(sigma: &Rational, b: u64) -> u64 {
    (&Rational::from(b) * &(Rational::one() + sigma))
        .ceil()
        .to_u64()
        .expect("phi fits in u64")
}

/// Bookkeeping for one colored interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub small: i64,
    pub large: i64,
    /// First coordinate of the structured color, `large mod phi`.
    pub class: u64,
    /// Second coordinate, the large counter before increment.
    pub level: u64,
    pub color: ColorId,
}

#[derive(Debug, Clone)]
pub struct BlockAlgorithm {
    sigma: Rational,
    b: u64,
    phi: u64,
    small_counters: HashMap<i64, u64>,
    large_counters: HashMap<i64, u64>,
    registry: BTreeMap<(u64, u64), ColorId>,
    routes: Vec<Route>,
}

impl BlockAlgorithm {
    pub fn new(sigma: Rational, b: u64) -> Result<Self, AlgorithmError> {
        if sigma < Rational::one() {
            return Err(AlgorithmError::Parameters(format!("sigma must be >= 1, got {sigma}")));
        }
        if b == 0 {
            return Err(AlgorithmError::Parameters("b must be >= 1".to_string()));
        }
        let phi = phi(&sigma, b);
        Ok(BlockAlgorithm {
            sigma,
            b,
            phi,
            small_counters: HashMap::new(),
            large_counters: HashMap::new(),
            registry: BTreeMap::new(),
            routes: Vec::new(),
        })
    }

    /// Smallest denominator of sigma in lowest terms; gives ratio exactly
    /// `1 + sigma` asymptotically.
    pub fn default_b(sigma: &Rational) -> Result<u64, AlgorithmError> {
        sigma
            .denom()
            .to_u64()
            .ok_or_else(|| AlgorithmError::Parameters(format!("denominator of {sigma} is too large for b")))
    }

    pub fn sigma(&self) -> &Rational {
        &self.sigma
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn phi(&self) -> u64 {
        self.phi
    }

    pub fn small_counter(&self, i: i64) -> u64 {
        self.small_counters.get(&i).copied().unwrap_or(0)
    }

    pub fn large_counter(&self, j: i64) -> u64 {
        self.large_counters.get(&j).copied().unwrap_or(0)
    }

    pub fn routes(&self) -> &[Route] {
        &self.routes
    }

    /// Structured color behind a dense id.
    pub fn structured(&self, color: ColorId) -> Option<(u64, u64)> {
        self.registry.iter().find(|(_, &c)| c == color).map(|(k, _)| *k)
    }

    /// Upper bound on colors for an instance with clique number `omega`:
    /// `phi * floor((omega + b(b-1)) / b)`.
    pub fn color_bound(&self, omega: u64) -> u64 {
        block_color_bound(self.phi, self.b, omega)
    }
}

pub fn block_color_bound(phi: u64, b: u64, omega: u64) -> u64 {
    phi * ((omega + b * (b - 1)) / b)
}

impl OnlineAlgorithm for BlockAlgorithm {
    fn color(&mut self, interval: &Interval) -> Result<ColorId, AlgorithmError> {
        let length = interval.length();
        if length < Rational::one() || length > self.sigma {
            return Err(AlgorithmError::LengthOutOfRange {
                interval: interval.clone(),
                length,
                sigma: self.sigma.clone(),
            });
        }
        let small = small_block_index(interval.left(), self.b)?;
        let s = self.small_counters.entry(small).or_insert(0);
        let large = select_large_block(small, *s, self.b);
        *s += 1;
        let l = self.large_counters.entry(large).or_insert(0);
        let level = *l;
        *l += 1;
        let class = large.rem_euclid(self.phi as i64) as u64;
        let next_id = self.registry.len();
        let color = *self.registry.entry((class, level)).or_insert(next_id);
        self.routes.push(Route {
            small,
            large,
            class,
            level,
            color,
        });
        Ok(color)
    }

    fn name(&self) -> String {
        format!("block(sigma={},b={})", self.sigma, self.b)
    }
}

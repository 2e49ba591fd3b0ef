use std::collections::BTreeMap;

use super::{AlgorithmError, OnlineAlgorithm};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::transcript::ColorId;

/// Greedy: the smallest color not used by any intersecting predecessor.
#[derive(Debug, Default, Clone)]
pub struct FirstFit {
    // Per color, its (pairwise disjoint) intervals keyed by left endpoint.
    classes: Vec<BTreeMap<Rational, Rational>>,
}

impl FirstFit {
    pub fn new() -> Self {
        Self::default()
    }

    fn class_is_free(class: &BTreeMap<Rational, Rational>, interval: &Interval) -> bool {
        // Disjoint intervals sorted by left are also sorted by right, so only
        // the last one starting at or before `interval.right` can reach it.
        match class.range(..=interval.right().clone()).next_back() {
            Some((_, right)) => right < interval.left(),
            None => true,
        }
    }
}

impl OnlineAlgorithm for FirstFit {
    fn color(&mut self, interval: &Interval) -> Result<ColorId, AlgorithmError> {
        let color = self
            .classes
            .iter()
            .position(|class| Self::class_is_free(class, interval))
            .unwrap_or_else(|| {
                self.classes.push(BTreeMap::new());
                self.classes.len() - 1
            });
        self.classes[color].insert(interval.left().clone(), interval.right().clone());
        Ok(color)
    }

    fn name(&self) -> String {
        "firstfit".to_string()
    }
}

#![allow(dead_code)]

use std::collections::BTreeMap;

use sigmacolor::algorithms::AlgorithmError;
use sigmacolor::{ColorId, FirstFit, Interval, OnlineAlgorithm, Rational};

/// FirstFit run separately inside each palette; the palette of an interval is
/// chosen by a fixed function of the interval. Palettes never share colors,
/// so the coloring stays proper while the adversary sees chosen overlaps.
pub struct PaletteFirstFit<F> {
    palette_of: F,
    palettes: BTreeMap<i64, FirstFit>,
}

const STRIDE: usize = 1 << 20;

impl<F: Fn(&Interval) -> i64> PaletteFirstFit<F> {
    pub fn new(palette_of: F) -> Self {
        PaletteFirstFit {
            palette_of,
            palettes: BTreeMap::new(),
        }
    }
}

impl<F: Fn(&Interval) -> i64> OnlineAlgorithm for PaletteFirstFit<F> {
    fn color(&mut self, interval: &Interval) -> Result<ColorId, AlgorithmError> {
        let p = (self.palette_of)(interval);
        let local = self.palettes.entry(p).or_default().color(interval)?;
        let base = usize::try_from(p.rem_euclid(1 << 20)).unwrap() * STRIDE;
        Ok(base + local)
    }

    fn name(&self) -> String {
        "palette-firstfit".to_string()
    }
}

/// Palette 0 left of `t`, palette 1 from `t` on (by left endpoint).
pub fn split_at(t: Rational) -> PaletteFirstFit<impl Fn(&Interval) -> i64> {
    PaletteFirstFit::new(move |x: &Interval| i64::from(x.left() >= &t))
}

/// One palette per unit cell `[k, k+1)` of the left endpoint.
pub fn per_unit_cell() -> PaletteFirstFit<impl Fn(&Interval) -> i64> {
    PaletteFirstFit::new(|x: &Interval| i64::try_from(x.left().floor()).unwrap())
}

/// Stabbing count at every endpoint, the naive way.
pub fn brute_clique(xs: &[Interval]) -> usize {
    xs.iter()
        .flat_map(|x| [x.left(), x.right()])
        .map(|p| xs.iter().filter(|y| y.contains_point(p)).count())
        .max()
        .unwrap_or(0)
}

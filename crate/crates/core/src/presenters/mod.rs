//! Adaptive adversaries (the Presenter side of the coloring game).
//!
//! Every strategy is driven through the same two-call protocol: `next()`
//! reveals an interval (or `None` when the strategy is finished) and exactly
//! one `observe()` reports the color the algorithm chose for it.
//!
//! Composite strategies are built from a schema recipe: a base clique and four
//! lifting constructions, each of which plays the inner strategy inside a
//! shifted window and then adds separation and final phases around it.

mod four_split;
mod lower32;
mod lower52;
mod lower53;
mod lower74;
mod primitives;
pub mod recipe;
pub mod recurrence;
mod staged;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::interval::Interval;
use crate::transcript::{ColorId, Entry};

pub use four_split::{four_split, lemma_4sets_check, SplitError, SplitOutcome};
pub use primitives::{clique_presenter, FixedSequence, Repeat, Separation, Side, UntilColors};
pub use recipe::{Defaults, Recipe, RecipeError, RecipeExpr, SchemaParams};

/// Set of color ids.
pub type ColorSet = BTreeSet<ColorId>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("observe() called with no interval pending")]
pub struct ProtocolError;

/// Which branch a branching strategy took.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// Right-hand colors differ enough; one final clique spans both halves.
    Lower74Spread,
    /// Right-hand colors mostly repeat; pre-final clique then final clique.
    Lower74Shared,
    /// Initial games used many colors overall; one covering clique.
    Lower52Union,
    /// Four-way split found; the two end cliques differ, one bridge clique.
    Lower52Bridge,
    /// Four-way split found; the end cliques overlap, two bridge cliques.
    Lower52DoubleBridge,
}

pub trait Presenter {
    /// The next interval, or `None` once the strategy is finished.
    ///
    /// Panics if the previous interval has not been observed yet.
    fn next(&mut self) -> Option<Interval>;

    fn observe(&mut self, color: ColorId) -> Result<(), ProtocolError>;

    /// Branch taken at the top level, for strategies that branch.
    fn branch(&self) -> Option<Branch> {
        None
    }
}

impl<P: Presenter + ?Sized> Presenter for Box<P> {
    fn next(&mut self) -> Option<Interval> {
        (**self).next()
    }

    fn observe(&mut self, color: ColorId) -> Result<(), ProtocolError> {
        (**self).observe(color)
    }

    fn branch(&self) -> Option<Branch> {
        (**self).branch()
    }
}

/// The `count` entries with the smallest (`Side::Left`) or largest
/// (`Side::Right`) left endpoints.
///
/// Separation anchors are distinct bisection points, so there are no ties.
pub(crate) fn extreme(entries: &[Entry], count: usize, side: Side) -> Vec<Entry> {
    let mut sorted: Vec<&Entry> = entries.iter().collect();
    sorted.sort_by(|a, b| a.interval.left().cmp(b.interval.left()));
    assert!(
        sorted.windows(2).all(|w| w[0].interval.left() < w[1].interval.left()),
        "separation anchors must be distinct"
    );
    let count = count.min(sorted.len());
    let picked = match side {
        Side::Left => &sorted[..count],
        Side::Right => &sorted[sorted.len() - count..],
    };
    picked.iter().map(|e| (*e).clone()).collect()
}

//! The record of one Presenter/Algorithm game.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::interval::Interval;

/// Opaque color identifier assigned by an online algorithm.
pub type ColorId = usize;

/// One presented interval and the color it received.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    #[serde(flatten)]
    pub interval: Interval,
    pub color: ColorId,
}

/// Entries in presentation order.
///
/// Serializes as a JSON array of `{"left": "p/q", "right": "p/q", "color": n}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transcript {
    entries: Vec<Entry>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, interval: Interval, color: ColorId) {
        self.entries.push(Entry { interval, color });
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn intervals(&self) -> Vec<Interval> {
        self.entries.iter().map(|e| e.interval.clone()).collect()
    }

    pub fn colors(&self) -> BTreeSet<ColorId> {
        self.entries.iter().map(|e| e.color).collect()
    }

    pub fn distinct_colors(&self) -> usize {
        self.colors().len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

impl FromIterator<(Interval, ColorId)> for Transcript {
    fn from_iter<T: IntoIterator<Item = (Interval, ColorId)>>(iter: T) -> Self {
        Transcript {
            entries: iter
                .into_iter()
                .map(|(interval, color)| Entry { interval, color })
                .collect(),
        }
    }
}

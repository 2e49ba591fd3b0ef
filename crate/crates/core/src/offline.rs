//! Offline verification oracles over complete interval sets.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use serde::Serialize;

use crate::interval::{intersects, Interval};
use crate::rational::Rational;
use crate::transcript::{ColorId, Transcript};

/// Maximum number of intervals sharing a common point.
///
/// Event sweep; at equal coordinates starts are processed before ends, so
/// touching closed intervals count as overlapping.
pub fn clique_number(intervals: &[Interval]) -> usize {
    // (coordinate, 0 = start / 1 = end)
    let mut events: Vec<(&Rational, u8)> = Vec::with_capacity(2 * intervals.len());
    for interval in intervals {
        events.push((interval.left(), 0));
        events.push((interval.right(), 1));
    }
    events.sort_unstable();
    let mut open = 0usize;
    let mut best = 0usize;
    for (_, kind) in events {
        if kind == 0 {
            open += 1;
            best = best.max(open);
        } else {
            open -= 1;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propriety {
    Ok,
    /// Lexicographically first pair `(i, j)`, `i < j`, of intersecting entries
    /// with equal colors.
    Violation(usize, usize),
}

impl Propriety {
    pub fn is_ok(&self) -> bool {
        matches!(self, Propriety::Ok)
    }
}

pub fn verify_proper(transcript: &Transcript) -> Propriety {
    let mut by_color: BTreeMap<ColorId, Vec<usize>> = BTreeMap::new();
    for (idx, entry) in transcript.entries().iter().enumerate() {
        by_color.entry(entry.color).or_default().push(idx);
    }
    let entries = transcript.entries();
    let mut first: Option<(usize, usize)> = None;
    for members in by_color.values() {
        // A color class is proper iff, sorted by left endpoint, each interval
        // ends strictly before the next one starts.
        let mut sorted = members.clone();
        sorted.sort_by(|&a, &b| entries[a].interval.left().cmp(entries[b].interval.left()));
        let clean = sorted
            .windows(2)
            .all(|w| entries[w[0]].interval.right() < entries[w[1]].interval.left());
        if clean {
            continue;
        }
        // Rare path: find the smallest violating pair of this class.
        'outer: for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                if intersects(&entries[i].interval, &entries[j].interval) {
                    if first.map_or(true, |f| (i, j) < f) {
                        first = Some((i, j));
                    }
                    break 'outer;
                }
            }
        }
    }
    match first {
        Some((i, j)) => Propriety::Violation(i, j),
        None => Propriety::Ok,
    }
}

/// Greedy coloring in nondecreasing order of left endpoints (ties by input
/// index), always reusing the smallest free color. Uses exactly
/// `clique_number(intervals)` colors.
pub fn offline_optimal_coloring(intervals: &[Interval]) -> Vec<ColorId> {
    let mut order: Vec<usize> = (0..intervals.len()).collect();
    order.sort_by(|&a, &b| intervals[a].left().cmp(intervals[b].left()).then(a.cmp(&b)));

    let mut colors = vec![0; intervals.len()];
    let mut active: BinaryHeap<Reverse<(&Rational, ColorId)>> = BinaryHeap::new();
    let mut free: BinaryHeap<Reverse<ColorId>> = BinaryHeap::new();
    let mut next_fresh = 0;
    for idx in order {
        let left = intervals[idx].left();
        while let Some(Reverse((right, color))) = active.peek() {
            if *right < left {
                free.push(Reverse(*color));
                active.pop();
            } else {
                break;
            }
        }
        let color = match free.pop() {
            Some(Reverse(c)) => c,
            None => {
                next_fresh += 1;
                next_fresh - 1
            }
        };
        colors[idx] = color;
        active.push(Reverse((intervals[idx].right(), color)));
    }
    colors
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub min_len: Option<Rational>,
    pub max_len: Option<Rational>,
    pub containment: bool,
}

impl BoundsReport {
    /// Every length lies in `[1, sigma]`.
    pub fn lengths_within(&self, sigma: &Rational) -> bool {
        let one = Rational::one();
        match (&self.min_len, &self.max_len) {
            (Some(lo), Some(hi)) => lo >= &one && hi <= sigma,
            _ => true,
        }
    }
}

/// Length extremes and whether every interval lies inside `region`.
pub fn bounds_report(transcript: &Transcript, region: &Interval) -> BoundsReport {
    let mut min_len: Option<Rational> = None;
    let mut max_len: Option<Rational> = None;
    let mut containment = true;
    for entry in transcript.entries() {
        let len = entry.interval.length();
        if min_len.as_ref().map_or(true, |m| &len < m) {
            min_len = Some(len.clone());
        }
        if max_len.as_ref().map_or(true, |m| &len > m) {
            max_len = Some(len);
        }
        containment &= region.covers(&entry.interval);
    }
    BoundsReport {
        min_len,
        max_len,
        containment,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::iv;
    use crate::rational::q;
    use proptest::prelude::*;

    fn stab_oracle(intervals: &[Interval]) -> usize {
        intervals
            .iter()
            .flat_map(|i| [i.left(), i.right()])
            .map(|p| intervals.iter().filter(|i| i.contains_point(p)).count())
            .max()
            .unwrap_or(0)
    }

    fn brute_proper(t: &Transcript) -> Propriety {
        let e = t.entries();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i].color == e[j].color && intersects(&e[i].interval, &e[j].interval) {
                    return Propriety::Violation(i, j);
                }
            }
        }
        Propriety::Ok
    }

    #[test]
    fn clique_examples() {
        assert_eq!(clique_number(&[]), 0);
        assert_eq!(clique_number(&[iv("0", "1"), iv("1", "2"), iv("2", "3")]), 2);
        assert_eq!(clique_number(&vec![iv("0", "1"); 7]), 7);
    }

    #[test]
    fn proper_examples() {
        let ok: Transcript = [(iv("0", "1"), 0), (iv("1", "2"), 1)].into_iter().collect();
        assert_eq!(verify_proper(&ok), Propriety::Ok);
        let bad: Transcript = [(iv("0", "1"), 0), (iv("1", "2"), 0)].into_iter().collect();
        assert_eq!(verify_proper(&bad), Propriety::Violation(0, 1));
    }

    #[test]
    fn reports_lexicographically_first_violation() {
        // (1,3) violates in color 1; (0,4) violates in color 0. (0,4) < (1,3).
        let t: Transcript = [
            (iv("0", "1"), 0),
            (iv("10", "11"), 1),
            (iv("20", "21"), 2),
            (iv("21/2", "12"), 1),
            (iv("1/2", "3/2"), 0),
        ]
        .into_iter()
        .collect();
        assert_eq!(verify_proper(&t), Propriety::Violation(0, 4));
    }

    #[test]
    fn offline_examples() {
        let xs = [iv("0", "1"), iv("1/2", "3/2"), iv("2", "3")];
        assert_eq!(offline_optimal_coloring(&xs), vec![0, 1, 0]);
        assert!(offline_optimal_coloring(&[]).is_empty());
        assert_eq!(offline_optimal_coloring(&[iv("5", "6")]), vec![0]);
    }

    #[test]
    fn bounds_examples() {
        let t: Transcript = [(iv("0", "1"), 0)].into_iter().collect();
        let r = bounds_report(&t, &iv("0", "1"));
        assert_eq!((r.min_len.clone(), r.max_len.clone(), r.containment), (Some(q("1")), Some(q("1")), true));
        assert!(r.lengths_within(&q("1")));

        let t: Transcript = [(iv("0", "1"), 0), (iv("1/2", "2"), 1)].into_iter().collect();
        let r = bounds_report(&t, &iv("0", "2"));
        assert_eq!((r.min_len.clone(), r.max_len.clone(), r.containment), (Some(q("1")), Some(q("3/2")), true));
        assert!(!r.lengths_within(&q("1")));
        assert!(!bounds_report(&t, &iv("0", "3/2")).containment);
    }

    fn instance(max: usize) -> impl Strategy<Value = Vec<Interval>> {
        prop::collection::vec((0i64..60, 1i64..4, 0i64..12, 1i64..4), 0..max).prop_map(|raw| {
            raw.into_iter()
                .map(|(l, ld, extra, ed)| {
                    let left = Rational::new(l, ld);
                    let len = Rational::one() + Rational::new(extra, ed * 4);
                    Interval::with_length(left, &len).unwrap()
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn clique_matches_stab_oracle(xs in instance(200)) {
            prop_assert_eq!(clique_number(&xs), stab_oracle(&xs));
        }

        #[test]
        fn offline_coloring_is_proper_and_optimal(xs in instance(120)) {
            let colors = offline_optimal_coloring(&xs);
            let t: Transcript = xs.iter().cloned().zip(colors.iter().copied()).collect();
            prop_assert!(verify_proper(&t).is_ok());
            prop_assert_eq!(t.distinct_colors(), clique_number(&xs));
        }

        #[test]
        fn verify_proper_matches_brute_force(xs in instance(40), palette in 1usize..5, seed in any::<u64>()) {
            let t: Transcript = xs
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, x)| (x, ((seed >> (i % 60)) as usize + i) % palette))
                .collect();
            prop_assert_eq!(verify_proper(&t), brute_proper(&t));
        }
    }
}

//! Union-or-split dichotomy for `4^n` equal-size color sets.
//!
//! Either the union of all sets is large, at least `((3 + gamma) / 3)^n k`,
//! or the index range can be cut into four consecutive blocks whose unions
//! share at least `(1 - gamma) k` colors.

use std::ops::Range;

use thiserror::Error;

use super::ColorSet;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("set {index} has {actual} elements, expected {expected}")]
    SizeMismatch { index: usize, actual: usize, expected: usize },
    #[error("family has {0} sets, which is not a power of four")]
    NotPowerOfFour(usize),
    #[error("gamma must lie in [0, 1], got {0}")]
    Gamma(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitOutcome {
    /// No level had a large four-way intersection; `union` holds every color.
    Union { union: ColorSet },
    /// Consecutive index blocks covering `0..len` whose unions intersect in
    /// `witness`.
    Partition {
        ranges: [Range<usize>; 4],
        witness: ColorSet,
        /// Hierarchy level at which the group was found.
        level: u32,
    },
}

fn intersection_of<'a>(sets: impl IntoIterator<Item = &'a ColorSet>) -> ColorSet {
    let mut iter = sets.into_iter();
    let Some(first) = iter.next() else {
        return ColorSet::new();
    };
    iter.fold(first.clone(), |acc, s| acc.intersection(s).copied().collect())
}

fn union_of<'a>(sets: impl IntoIterator<Item = &'a ColorSet>) -> ColorSet {
    sets.into_iter().flatten().copied().collect()
}

/// Exponent `n` with `4^n == len`.
fn log4(len: usize) -> Option<u32> {
    if len == 0 {
        return None;
    }
    let n = len.trailing_zeros();
    (len.is_power_of_two() && n % 2 == 0).then_some(n / 2)
}

/// Bottom-up over the hierarchy where each level-`j+1` set is the union of
/// four consecutive level-`j` sets. The first group (lowest level, then
/// leftmost) whose four members share at least `(1 - gamma) k` colors, and at
/// least one, yields a partition: the group's outer members are extended to index 0 and
/// to the end, which only enlarges the unions.
pub fn four_split(sets: &[ColorSet], k: usize, gamma: &Rational) -> Result<SplitOutcome, SplitError> {
    if gamma.is_negative() || gamma > &Rational::one() {
        return Err(SplitError::Gamma(gamma.clone()));
    }
    let n = log4(sets.len()).ok_or(SplitError::NotPowerOfFour(sets.len()))?;
    if let Some((index, s)) = sets.iter().enumerate().find(|(_, s)| s.len() != k) {
        return Err(SplitError::SizeMismatch {
            index,
            actual: s.len(),
            expected: k,
        });
    }
    let threshold = (Rational::one() - gamma) * Rational::from(k);

    let mut level: Vec<ColorSet> = sets.to_vec();
    for j in 0..n {
        let width = 4usize.pow(j);
        for (group, members) in level.chunks_exact(4).enumerate() {
            let common = intersection_of(members);
            if !common.is_empty() && Rational::from(common.len()) >= threshold {
                let base = 4 * group * width;
                let ranges = [
                    0..base + width,
                    base + width..base + 2 * width,
                    base + 2 * width..base + 3 * width,
                    base + 3 * width..sets.len(),
                ];
                let witness = intersection_of(&ranges.clone().map(|r| union_of(&sets[r])));
                return Ok(SplitOutcome::Partition {
                    ranges,
                    witness,
                    level: j,
                });
            }
        }
        level = level.chunks_exact(4).map(union_of).collect();
    }
    debug_assert_eq!(level.len(), 1);
    Ok(SplitOutcome::Union {
        union: level.pop().unwrap_or_default(),
    })
}

/// Whether four equal-size sets satisfy: small intersection (at most
/// `(1 - gamma) k`) implies large union (at least `(3 + gamma) k / 3`).
///
/// Always true; exposed as a property-test helper.
pub fn lemma_4sets_check(sets: [&ColorSet; 4], gamma: &Rational) -> bool {
    let k = sets[0].len();
    assert!(sets.iter().all(|s| s.len() == k), "sets must have equal size");
    let k = Rational::from(k);
    let common = Rational::from(intersection_of(sets).len());
    let union = Rational::from(union_of(sets).len());
    let small = common <= (Rational::one() - gamma) * &k;
    let large = union * Rational::from(3) >= (Rational::from(3) + gamma) * k;
    !small || large
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn set(xs: impl IntoIterator<Item = usize>) -> ColorSet {
        xs.into_iter().collect()
    }

    #[test]
    fn identical_sets_partition() {
        let sets = vec![set(0..5); 4];
        for gamma in ["0", "1/3", "1"] {
            match four_split(&sets, 5, &q(gamma)).unwrap() {
                SplitOutcome::Partition { ranges, witness, level } => {
                    assert_eq!(ranges, [0..1, 1..2, 2..3, 3..4]);
                    assert_eq!(witness, set(0..5));
                    assert_eq!(level, 0);
                }
                other => panic!("expected partition, got {other:?}"),
            }
        }
    }

    #[test]
    fn disjoint_sets_union_at_gamma_one() {
        let sets: Vec<ColorSet> = (0..4).map(|i| set(10 * i..10 * i + 3)).collect();
        match four_split(&sets, 3, &q("1")).unwrap() {
            SplitOutcome::Union { union } => assert_eq!(union.len(), 12),
            other => panic!("expected union, got {other:?}"),
        }
    }

    #[test]
    fn higher_level_group_is_extended_to_the_ends() {
        // Level 0 groups are pairwise disjoint inside; level 1 unions share {99}.
        let mut sets: Vec<ColorSet> = (0..16).map(|i| set([i])).collect();
        sets[5] = set([99]);
        sets[9] = set([99]);
        sets[13] = set([99]);
        sets[1] = set([99]);
        match four_split(&sets, 1, &q("0")).unwrap() {
            SplitOutcome::Partition { ranges, witness, level } => {
                assert_eq!(level, 1);
                assert_eq!(ranges, [0..4, 4..8, 8..12, 12..16]);
                assert_eq!(witness, set([99]));
            }
            other => panic!("expected partition, got {other:?}"),
        }
    }

    #[test]
    fn single_set_is_a_union() {
        assert_eq!(
            four_split(&[set(0..3)], 3, &q("1/2")).unwrap(),
            SplitOutcome::Union { union: set(0..3) }
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(four_split(&vec![set(0..2); 8], 2, &q("1/2")), Err(SplitError::NotPowerOfFour(8)));
        assert_eq!(four_split(&[], 2, &q("1/2")), Err(SplitError::NotPowerOfFour(0)));
        let mut sets = vec![set(0..2); 4];
        sets[2] = set(0..3);
        assert!(matches!(four_split(&sets, 2, &q("1/2")), Err(SplitError::SizeMismatch { index: 2, .. })));
        assert!(matches!(four_split(&vec![set(0..2); 4], 2, &q("3/2")), Err(SplitError::Gamma(_))));
    }

    #[test]
    fn four_sets_examples() {
        let a = set(0..4);
        assert!(lemma_4sets_check([&a, &a, &a, &a], &q("1/2")));
        let d: Vec<ColorSet> = (0..4).map(|i| set(4 * i..4 * i + 4)).collect();
        assert!(lemma_4sets_check([&d[0], &d[1], &d[2], &d[3]], &q("1")));
    }
}

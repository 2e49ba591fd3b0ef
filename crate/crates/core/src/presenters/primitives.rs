use std::collections::VecDeque;

use super::{ColorSet, Presenter, ProtocolError};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::transcript::ColorId;

/// Presents the same interval a fixed number of times.
#[derive(Debug, Clone)]
pub struct Repeat {
    interval: Interval,
    remaining: u64,
    pending: bool,
}

impl Repeat {
    pub fn new(interval: Interval, times: u64) -> Self {
        Repeat {
            interval,
            remaining: times,
            pending: false,
        }
    }
}

impl Presenter for Repeat {
    fn next(&mut self) -> Option<Interval> {
        assert!(!self.pending, "next() called before observe()");
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        self.pending = true;
        Some(self.interval.clone())
    }

    fn observe(&mut self, _color: ColorId) -> Result<(), ProtocolError> {
        if !std::mem::replace(&mut self.pending, false) {
            return Err(ProtocolError);
        }
        Ok(())
    }
}

/// `[x, x+1]` presented `omega` times: forces `omega` colors on an
/// `omega`-clique.
pub fn clique_presenter(omega: u64, region_left: Rational) -> Repeat {
    let right = &region_left + &Rational::one();
    Repeat::new(Interval::new(region_left, right).expect("unit interval"), omega)
}

/// Which end of the window the push-set colors are driven to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Bisection strategy over a window of anchors `[x, x + w]`.
///
/// Each round presents the unit interval starting at the midpoint of the
/// current bracket. If the answer is in the push set the bracket keeps the
/// half that moves later intervals away from the push side, otherwise the
/// other half. Afterwards every push-set colored interval starts strictly on
/// the push side of every other one, and all intervals pairwise intersect
/// (anchors stay within `w < 1` of each other).
#[derive(Debug, Clone)]
pub struct Separation {
    lo: Rational,
    hi: Rational,
    rounds_left: u64,
    push: ColorSet,
    side: Side,
    pending: Option<Rational>,
}

impl Separation {
    pub fn new(rounds: u64, window_left: Rational, width: Rational, push: ColorSet, side: Side) -> Self {
        assert!(width.is_positive(), "separation window must have positive width");
        let hi = &window_left + &width;
        Separation {
            lo: window_left,
            hi,
            rounds_left: rounds,
            push,
            side,
            pending: None,
        }
    }

    /// Current bisection bracket `(l_i, r_i)`.
    pub fn bracket(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }
}

impl Presenter for Separation {
    fn next(&mut self) -> Option<Interval> {
        assert!(self.pending.is_none(), "next() called before observe()");
        if self.rounds_left == 0 {
            return None;
        }
        self.rounds_left -= 1;
        let anchor = (&self.lo + &self.hi) / Rational::from(2);
        debug_assert!(self.lo < anchor && anchor < self.hi);
        let interval = Interval::with_length(anchor.clone(), &Rational::one()).expect("unit interval");
        self.pending = Some(anchor);
        Some(interval)
    }

    fn observe(&mut self, color: ColorId) -> Result<(), ProtocolError> {
        let anchor = self.pending.take().ok_or(ProtocolError)?;
        let pushed = self.push.contains(&color);
        // Later intervals go right when this one belongs on the left.
        let later_go_right = match self.side {
            Side::Left => pushed,
            Side::Right => !pushed,
        };
        if later_go_right {
            self.lo = anchor;
        } else {
            self.hi = anchor;
        }
        Ok(())
    }
}

/// Plays an inner strategy until the algorithm has used `target` distinct
/// colors on it (or the inner strategy ends).
pub struct UntilColors {
    inner: Box<dyn Presenter>,
    target: usize,
    seen: ColorSet,
}

impl UntilColors {
    pub fn new(inner: Box<dyn Presenter>, target: usize) -> Self {
        UntilColors {
            inner,
            target,
            seen: ColorSet::new(),
        }
    }
}

impl Presenter for UntilColors {
    fn next(&mut self) -> Option<Interval> {
        if self.seen.len() >= self.target {
            return None;
        }
        self.inner.next()
    }

    fn observe(&mut self, color: ColorId) -> Result<(), ProtocolError> {
        self.inner.observe(color)?;
        self.seen.insert(color);
        Ok(())
    }
}

/// Non-adaptive presenter replaying a fixed list.
#[derive(Debug, Clone, Default)]
pub struct FixedSequence {
    queue: VecDeque<Interval>,
    pending: bool,
}

impl FixedSequence {
    pub fn new(intervals: impl IntoIterator<Item = Interval>) -> Self {
        FixedSequence {
            queue: intervals.into_iter().collect(),
            pending: false,
        }
    }
}

impl Presenter for FixedSequence {
    fn next(&mut self) -> Option<Interval> {
        assert!(!self.pending, "next() called before observe()");
        let next = self.queue.pop_front();
        self.pending = next.is_some();
        next
    }

    fn observe(&mut self, _color: ColorId) -> Result<(), ProtocolError> {
        if !std::mem::replace(&mut self.pending, false) {
            return Err(ProtocolError);
        }
        Ok(())
    }
}

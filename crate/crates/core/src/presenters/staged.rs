use super::{Branch, ColorSet, Presenter, ProtocolError, Repeat, SchemaParams, UntilColors};
use crate::interval::Interval;
use crate::rational::Rational;
use crate::transcript::{ColorId, Entry};

/// A multi-phase strategy: each phase is a sub-presenter, and the next phase
/// is chosen from what the algorithm did during the previous one.
pub(crate) trait Plan {
    /// Called once at the start (with an empty log) and again each time the
    /// current phase is exhausted, with that phase's entries. `None` ends the
    /// strategy.
    fn advance(&mut self, finished: Vec<Entry>) -> Option<Box<dyn Presenter>>;

    fn branch(&self) -> Option<Branch> {
        None
    }
}

pub(crate) struct Staged<P> {
    plan: P,
    phase: Option<Box<dyn Presenter>>,
    log: Vec<Entry>,
    pending: Option<Interval>,
    done: bool,
}

impl<P: Plan> Staged<P> {
    pub(crate) fn new(plan: P) -> Self {
        Staged {
            plan,
            phase: None,
            log: Vec::new(),
            pending: None,
            done: false,
        }
    }
}

impl<P: Plan> Presenter for Staged<P> {
    fn next(&mut self) -> Option<Interval> {
        assert!(self.pending.is_none(), "next() called before observe()");
        while !self.done {
            let phase = match &mut self.phase {
                Some(phase) => phase,
                None => match self.plan.advance(std::mem::take(&mut self.log)) {
                    Some(phase) => self.phase.insert(phase),
                    None => {
                        self.done = true;
                        break;
                    }
                },
            };
            if let Some(interval) = phase.next() {
                self.pending = Some(interval.clone());
                return Some(interval);
            }
            self.phase = None;
        }
        None
    }

    fn observe(&mut self, color: ColorId) -> Result<(), ProtocolError> {
        let interval = self.pending.take().ok_or(ProtocolError)?;
        self.phase.as_mut().ok_or(ProtocolError)?.observe(color)?;
        self.log.push(Entry { interval, color });
        Ok(())
    }

    fn branch(&self) -> Option<Branch> {
        self.plan.branch()
    }
}

/// What every lifting construction needs to know about its inner strategy.
pub(crate) struct Frame {
    pub inner: SchemaParams,
    pub omega: u64,
    /// Clique size handed to each inner game.
    pub inner_omega: u64,
    /// Colors after which an inner game is cut off.
    pub target: usize,
    pub epsilon: Rational,
    /// Left end of this strategy's region.
    pub offset: Rational,
}

impl Frame {
    /// `offset + x`.
    pub fn at(&self, x: Rational) -> Rational {
        &self.offset + &x
    }

    /// Inner strategy at `offset + shift`, stopped once `target` colors appear.
    pub fn inner_game(&self, shift: Rational) -> Box<dyn Presenter> {
        let game = self.inner.presenter_at(self.inner_omega, &self.at(shift));
        Box::new(UntilColors::new(game, self.target))
    }

    pub fn eps_over(&self, d: i64) -> Rational {
        &self.epsilon / &Rational::from(d)
    }

    /// `times` copies of `[left, right]` (absolute coordinates).
    pub fn copies(&self, left: Rational, right: Rational, times: u64) -> Box<dyn Presenter> {
        let interval = Interval::new(left, right).expect("construction endpoints are ordered");
        Box::new(Repeat::new(interval, times))
    }
}

pub(crate) fn colors_of(entries: &[Entry]) -> ColorSet {
    entries.iter().map(|e| e.color).collect()
}

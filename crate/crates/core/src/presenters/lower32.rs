//! Lifting an `(alpha, sigma, M)` schema to `(2 - 1/(alpha+1), M+eps, M+1+eps)`.
//!
//! Layout relative to the region start:
//!
//! ```text
//! 0      eps/2  1      1+eps                M+1+eps
//! |sep anchors|        |----- inner game -----|
//!                  r --------- final ---------|
//! ```

use super::staged::{colors_of, Frame, Plan, Staged};
use super::{extreme, ColorSet, Presenter, Separation, Side};
use crate::rational::Rational;
use crate::transcript::Entry;

enum Stage {
    Start,
    Initial,
    Separation,
    Final,
    Done,
}

struct Lower32 {
    frame: Frame,
    stage: Stage,
    x: ColorSet,
}

impl Plan for Lower32 {
    fn advance(&mut self, finished: Vec<Entry>) -> Option<Box<dyn Presenter>> {
        let f = &self.frame;
        match self.stage {
            Stage::Start => {
                self.stage = Stage::Initial;
                Some(f.inner_game(Rational::one() + f.epsilon.clone()))
            }
            Stage::Initial => {
                self.x = colors_of(&finished);
                self.stage = Stage::Separation;
                let sep = Separation::new(f.omega, f.at(Rational::zero()), f.eps_over(2), self.x.clone(), Side::Left);
                Some(Box::new(sep))
            }
            Stage::Separation => {
                let y = extreme(&finished, f.inner_omega as usize, Side::Right);
                let r = y
                    .iter()
                    .map(|e| e.interval.right().clone())
                    .min()
                    .unwrap_or_else(|| f.at(Rational::one() + f.eps_over(2)));
                self.stage = Stage::Final;
                let end = f.at(f.inner.region() + &Rational::one() + &f.epsilon);
                Some(f.copies(r, end, f.omega - f.inner_omega))
            }
            Stage::Final | Stage::Done => {
                self.stage = Stage::Done;
                None
            }
        }
    }
}

pub(crate) fn presenter(frame: Frame) -> Box<dyn Presenter> {
    Box::new(Staged::new(Lower32 {
        frame,
        stage: Stage::Start,
        x: ColorSet::new(),
    }))
}

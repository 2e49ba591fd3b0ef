//! Lifting an `(alpha, sigma, M)` schema to `(2 - 1/(alpha+2), M+eps, M+2+eps)`.
//!
//! Two separations flank the inner game. The left one pushes the inner colors
//! away from the game, the right one pushes the inner colors and the left
//! survivors away from it, and the final clique `[r, l]` spans everything in
//! between.

use super::staged::{colors_of, Frame, Plan, Staged};
use super::{extreme, ColorSet, Presenter, Separation, Side};
use crate::rational::Rational;
use crate::transcript::Entry;

enum Stage {
    Start,
    Initial,
    LeftSeparation,
    RightSeparation,
    Final,
    Done,
}

struct Lower53 {
    frame: Frame,
    stage: Stage,
    x: ColorSet,
    r: Rational,
}

impl Plan for Lower53 {
    fn advance(&mut self, finished: Vec<Entry>) -> Option<Box<dyn Presenter>> {
        let f = &self.frame;
        let m = f.inner.region();
        let quarter = f.eps_over(4);
        match self.stage {
            Stage::Start => {
                self.stage = Stage::Initial;
                Some(f.inner_game(Rational::one() + f.eps_over(2)))
            }
            Stage::Initial => {
                self.x = colors_of(&finished);
                self.stage = Stage::LeftSeparation;
                let sep = Separation::new(f.omega, f.at(Rational::zero()), quarter, self.x.clone(), Side::Left);
                Some(Box::new(sep))
            }
            Stage::LeftSeparation => {
                let y1 = extreme(&finished, f.inner_omega as usize, Side::Right);
                self.r = y1
                    .iter()
                    .map(|e| e.interval.right().clone())
                    .min()
                    .unwrap_or_else(|| f.at(Rational::one() + &quarter));
                let mut push = self.x.clone();
                push.extend(y1.iter().map(|e| e.color));
                self.stage = Stage::RightSeparation;
                let window = f.at(m + &Rational::one() + &(&quarter * &Rational::from(3)));
                Some(Box::new(Separation::new(f.omega, window, quarter, push, Side::Right)))
            }
            Stage::RightSeparation => {
                let y2 = extreme(&finished, f.inner_omega as usize, Side::Left);
                let l = y2
                    .iter()
                    .map(|e| e.interval.left().clone())
                    .max()
                    .unwrap_or_else(|| f.at(m + &Rational::one() + &(&quarter * &Rational::from(3))));
                self.stage = Stage::Final;
                Some(f.copies(self.r.clone(), l, f.omega - f.inner_omega))
            }
            Stage::Final | Stage::Done => {
                self.stage = Stage::Done;
                None
            }
        }
    }
}

pub(crate) fn presenter(frame: Frame) -> Box<dyn Presenter> {
    Box::new(Staged::new(Lower53 {
        frame,
        stage: Stage::Start,
        x: ColorSet::new(),
        r: Rational::zero(),
    }))
}

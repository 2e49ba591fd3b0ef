//! Lifting an `(alpha, sigma, M)` schema to `(2 - 1/(2alpha+2), 2M+eps, 2M+2+eps)`.
//!
//! Two inner games side by side, each with its own outer separation. If the
//! right-hand colors `C2` bring enough new colors relative to `C1`, one final
//! clique spans both games. Otherwise a pre-final clique over the right game
//! collects colors `Q` disjoint from `C2` (hence mostly new relative to `C1`)
//! and the final clique only spans the left game, touching the pre-final one.

use super::staged::{colors_of, Frame, Plan, Staged};
use super::{extreme, Branch, ColorSet, Presenter, Separation, Side};
use crate::rational::Rational;
use crate::transcript::Entry;

enum Stage {
    Start,
    LeftGame,
    RightGame,
    LeftSeparation,
    RightSeparation,
    PreFinal,
    Final,
    Done,
}

struct Lower74 {
    frame: Frame,
    stage: Stage,
    x1: ColorSet,
    x2: ColorSet,
    c1: ColorSet,
    r: Rational,
    branch: Option<Branch>,
}

impl Lower74 {
    /// `M + 1 + 5eps/12`, where the shared-branch cliques meet.
    fn meeting_point(&self) -> Rational {
        let f = &self.frame;
        f.at(f.inner.region() + &Rational::one() + &(f.eps_over(12) * Rational::from(5)))
    }
}

impl Plan for Lower74 {
    fn advance(&mut self, finished: Vec<Entry>) -> Option<Box<dyn Presenter>> {
        let f = &self.frame;
        let m = f.inner.region();
        let sixth = f.eps_over(6);
        match self.stage {
            Stage::Start => {
                self.stage = Stage::LeftGame;
                Some(f.inner_game(Rational::one() + f.eps_over(3)))
            }
            Stage::LeftGame => {
                self.x1 = colors_of(&finished);
                self.stage = Stage::RightGame;
                Some(f.inner_game(m + &Rational::one() + &(f.eps_over(3) * Rational::from(2))))
            }
            Stage::RightGame => {
                self.x2 = colors_of(&finished);
                self.stage = Stage::LeftSeparation;
                let sep = Separation::new(f.omega, f.at(Rational::zero()), sixth, self.x1.clone(), Side::Left);
                Some(Box::new(sep))
            }
            Stage::LeftSeparation => {
                let y1 = extreme(&finished, f.inner_omega as usize, Side::Right);
                self.r = y1
                    .iter()
                    .map(|e| e.interval.right().clone())
                    .min()
                    .unwrap_or_else(|| f.at(Rational::one() + &sixth));
                self.c1 = self.x1.clone();
                self.c1.extend(y1.iter().map(|e| e.color));
                self.stage = Stage::RightSeparation;
                let window = f.at(m * &Rational::from(2) + Rational::one() + &sixth * &Rational::from(5));
                Some(Box::new(Separation::new(f.omega, window, sixth, self.x2.clone(), Side::Right)))
            }
            Stage::RightSeparation => {
                let y2 = extreme(&finished, f.inner_omega as usize, Side::Left);
                let l = y2
                    .iter()
                    .map(|e| e.interval.left().clone())
                    .max()
                    .unwrap_or_else(|| f.at(m * &Rational::from(2) + Rational::one() + &sixth * &Rational::from(5)));
                let mut c2 = self.x2.clone();
                c2.extend(y2.iter().map(|e| e.color));
                let fresh = c2.difference(&self.c1).count();
                // |C2 \ C1| >= omega / (2 alpha + 2)
                let spread = Rational::from(fresh) * (f.inner.alpha() * &Rational::from(2) + Rational::from(2))
                    >= Rational::from(f.omega);
                if spread {
                    self.branch = Some(Branch::Lower74Spread);
                    self.stage = Stage::Final;
                    Some(f.copies(self.r.clone(), l, f.omega - f.inner_omega))
                } else {
                    self.branch = Some(Branch::Lower74Shared);
                    self.stage = Stage::PreFinal;
                    Some(f.copies(self.meeting_point(), l, f.inner_omega))
                }
            }
            Stage::PreFinal => {
                self.stage = Stage::Final;
                Some(f.copies(self.r.clone(), self.meeting_point(), f.omega - f.inner_omega))
            }
            Stage::Final | Stage::Done => {
                self.stage = Stage::Done;
                None
            }
        }
    }

    fn branch(&self) -> Option<Branch> {
        self.branch
    }
}

pub(crate) fn presenter(frame: Frame) -> Box<dyn Presenter> {
    Box::new(Staged::new(Lower74 {
        frame,
        stage: Stage::Start,
        x1: ColorSet::new(),
        x2: ColorSet::new(),
        c1: ColorSet::new(),
        r: Rational::zero(),
        branch: None,
    }))
}

//! Lifting an `(alpha, sigma, M)` schema to
//! `(5/4 + (1-gamma) alpha / 2, 4^n M + eps, 4^n M + eps)`.
//!
//! `4^n` inner games are laid side by side with gaps `g = eps / 4^n`. Their
//! color sets go through [`four_split`]: a large union is answered by a single
//! covering clique, a four-way split by cliques over the outer blocks and one
//! or two bridges over the middle ones. Bridge endpoints sit at gap midpoints.

use super::staged::{Frame, Plan, Staged};
use super::{four_split, Branch, ColorSet, Presenter, SplitOutcome};
use crate::rational::Rational;
use crate::transcript::{ColorId, Entry};

enum Stage {
    Games,
    Union,
    Z1,
    Z2,
    Bridge,
    FirstBridge,
    SecondBridge,
    Done,
}

struct Lower52 {
    frame: Frame,
    gamma: Rational,
    games: usize,
    /// Distinct colors of each finished game, in order of first use.
    played: Vec<Vec<ColorId>>,
    stage: Stage,
    in_game: bool,
    /// Range starts of blocks 2, 3, 4.
    starts: [usize; 3],
    z1: ColorSet,
    branch: Option<Branch>,
}

impl Lower52 {
    fn gap(&self) -> Rational {
        &self.frame.epsilon / &Rational::from(self.games)
    }

    /// Left end of game `i`, relative to the region.
    fn game_start(&self, i: usize) -> Rational {
        Rational::from(i) * (self.frame.inner.region() + &self.gap())
    }

    /// Middle of the gap just before game `i` (absolute).
    fn mid(&self, i: usize) -> Rational {
        self.frame.at(self.game_start(i) - self.gap() / Rational::from(2))
    }

    fn end(&self) -> Rational {
        let m = self.frame.inner.region();
        self.frame.at(Rational::from(self.games) * m + self.frame.epsilon.clone())
    }

    fn split(&mut self) -> Box<dyn Presenter> {
        let k = self.played.iter().map(Vec::len).min().unwrap_or(0);
        let sets: Vec<ColorSet> = self.played.iter().map(|c| c[..k].iter().copied().collect()).collect();
        let f = &self.frame;
        let outcome = four_split(&sets, k, &self.gamma).expect("game count is a power of four and sets are truncated to k");
        match outcome {
            SplitOutcome::Union { .. } => {
                self.branch = Some(Branch::Lower52Union);
                self.stage = Stage::Union;
                f.copies(f.at(Rational::zero()), self.end(), f.inner_omega)
            }
            SplitOutcome::Partition { ranges, .. } => {
                self.starts = [ranges[1].start, ranges[2].start, ranges[3].start];
                self.stage = Stage::Z1;
                f.copies(f.at(Rational::zero()), self.mid(self.starts[0]), f.inner_omega)
            }
        }
    }
}

fn distinct_in_order(entries: &[Entry]) -> Vec<ColorId> {
    let mut seen = ColorSet::new();
    entries.iter().map(|e| e.color).filter(|&c| seen.insert(c)).collect()
}

impl Plan for Lower52 {
    fn advance(&mut self, finished: Vec<Entry>) -> Option<Box<dyn Presenter>> {
        match self.stage {
            Stage::Games => {
                if std::mem::replace(&mut self.in_game, false) {
                    self.played.push(distinct_in_order(&finished));
                }
                if self.played.len() < self.games {
                    self.in_game = true;
                    return Some(self.frame.inner_game(self.game_start(self.played.len())));
                }
                Some(self.split())
            }
            Stage::Z1 => {
                self.z1 = finished.iter().map(|e| e.color).collect();
                self.stage = Stage::Z2;
                let f = &self.frame;
                Some(f.copies(self.mid(self.starts[2]), self.end(), f.inner_omega))
            }
            Stage::Z2 => {
                let z2: ColorSet = finished.iter().map(|e| e.color).collect();
                let fresh = z2.difference(&self.z1).count();
                let f = &self.frame;
                if Rational::from(fresh) * Rational::from(4) >= Rational::from(f.omega) {
                    self.branch = Some(Branch::Lower52Bridge);
                    self.stage = Stage::Bridge;
                    Some(f.copies(self.mid(self.starts[0]), self.mid(self.starts[2]), f.inner_omega))
                } else {
                    self.branch = Some(Branch::Lower52DoubleBridge);
                    self.stage = Stage::FirstBridge;
                    Some(f.copies(self.mid(self.starts[0]), self.mid(self.starts[1]), f.inner_omega))
                }
            }
            Stage::FirstBridge => {
                self.stage = Stage::SecondBridge;
                let f = &self.frame;
                Some(f.copies(self.mid(self.starts[1]), self.mid(self.starts[2]), f.inner_omega))
            }
            Stage::Union | Stage::Bridge | Stage::SecondBridge | Stage::Done => {
                self.stage = Stage::Done;
                None
            }
        }
    }

    fn branch(&self) -> Option<Branch> {
        self.branch
    }
}

pub(crate) fn presenter(frame: Frame, gamma: Rational, n: u32) -> Box<dyn Presenter> {
    let games = 4usize.checked_pow(n).expect("4^n games fit in usize");
    Box::new(Staged::new(Lower52 {
        frame,
        gamma,
        games,
        played: Vec::new(),
        stage: Stage::Games,
        in_game: false,
        starts: [0; 3],
        z1: ColorSet::new(),
        branch: None,
    }))
}

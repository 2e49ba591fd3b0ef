use serde::Serialize;
use thiserror::Error;

use crate::algorithms::{AlgorithmError, OnlineAlgorithm};
use crate::interval::Interval;
use crate::offline::{bounds_report, clique_number, verify_proper};
use crate::presenters::{Presenter, ProtocolError, SchemaParams};
use crate::rational::Rational;
use crate::transcript::Transcript;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("algorithm failed in round {round}: {source}")]
    Algorithm {
        round: usize,
        #[source]
        source: AlgorithmError,
    },
    #[error("presenter protocol violation in round {round}")]
    Protocol { round: usize, source: ProtocolError },
}

/// Plays the presenter against the algorithm until the presenter stops.
pub fn run_game(algorithm: &mut dyn OnlineAlgorithm, presenter: &mut dyn Presenter) -> Result<Transcript, GameError> {
    let mut transcript = Transcript::new();
    while let Some(interval) = presenter.next() {
        let round = transcript.len();
        let color = algorithm
            .color(&interval)
            .map_err(|source| GameError::Algorithm { round, source })?;
        presenter
            .observe(color)
            .map_err(|source| GameError::Protocol { round, source })?;
        transcript.push(interval, color);
    }
    Ok(transcript)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameReport {
    pub omega_target: u64,
    pub colors_used: usize,
    pub clique_number: usize,
    pub guaranteed: u64,
    pub proper: bool,
    pub sigma_ok: bool,
    pub region_ok: bool,
    pub rounds: usize,
}

impl GameReport {
    /// Enough colors, clique within target, proper, and every interval
    /// within the length and region limits.
    pub fn passed(&self) -> bool {
        self.colors_used as u64 >= self.guaranteed
            && self.clique_number as u64 <= self.omega_target
            && self.proper
            && self.sigma_ok
            && self.region_ok
    }
}

/// Checks a transcript against a strategy's limits: lengths in
/// `[1, recipe.sigma()]`, everything inside `[0, recipe.region()]`.
pub fn evaluate(transcript: &Transcript, recipe: &SchemaParams, omega: u64) -> GameReport {
    let region = Interval::new(Rational::zero(), recipe.region().clone()).expect("region is nonempty");
    evaluate_with(transcript, omega, recipe.guaranteed_colors(omega), recipe.sigma(), &region)
}

pub fn evaluate_with(
    transcript: &Transcript,
    omega: u64,
    guaranteed: u64,
    sigma: &Rational,
    region: &Interval,
) -> GameReport {
    let bounds = bounds_report(transcript, region);
    GameReport {
        omega_target: omega,
        colors_used: transcript.distinct_colors(),
        clique_number: clique_number(&transcript.intervals()),
        guaranteed,
        proper: verify_proper(transcript).is_ok(),
        sigma_ok: bounds.lengths_within(sigma),
        region_ok: bounds.containment,
        rounds: transcript.len(),
    }
}

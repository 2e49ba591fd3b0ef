//! Game driver and validation.
//!
//! The driver owns the protocol: presenters and algorithms never see each
//! other, only the intervals and colors passed between them.

mod game;
mod grid;
mod random;

pub use game::{evaluate, evaluate_with, run_game, GameError, GameReport};
pub use grid::{experiment_grid, workers_from_env, write_csv, GridConfig, GridError, GridRow, CSV_HEADER, WORKERS_ENV};
pub use random::{random_instance, seeded_instance, RandomSpec};

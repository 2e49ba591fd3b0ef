//! Online coloring of intervals whose lengths lie in `[1, sigma]`.
//!
//! - [`algorithms`]: FirstFit and the block algorithm.
//! - [`presenters`]: adaptive adversaries forcing many colors.
//! - [`harness`]: plays games, validates transcripts, runs experiment grids.
//! - [`offline`]: clique number, propriety and optimal offline coloring.
//!
//! All coordinates are exact rationals.

pub mod algorithms;
pub mod harness;
pub mod interval;
pub mod offline;
pub mod presenters;
pub mod rational;
pub mod transcript;

pub use algorithms::{AlgorithmSpec, BlockAlgorithm, FirstFit, OnlineAlgorithm};
pub use harness::{evaluate, run_game, GameReport};
pub use interval::{intersects, Interval};
pub use offline::{clique_number, offline_optimal_coloring, verify_proper, Propriety};
pub use presenters::{Presenter, SchemaParams};
pub use rational::Rational;
pub use transcript::{ColorId, Entry, Transcript};

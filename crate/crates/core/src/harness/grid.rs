//! Experiment grids: every (algorithm, recipe, omega) combination plus
//! optional seeded random instances, run in parallel and reported in a fixed
//! order.

use std::io;

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use super::game::{evaluate, evaluate_with, run_game, GameError, GameReport};
use super::random::{seeded_instance, RandomSpec};
use crate::algorithms::{block_color_bound, phi, AlgorithmError, AlgorithmSpec};
use crate::interval::Interval;
use crate::offline::clique_number;
use crate::presenters::{Defaults, FixedSequence, RecipeError, RecipeExpr, SchemaParams};
use crate::rational::Rational;

/// Environment variable holding the number of grid worker threads.
pub const WORKERS_ENV: &str = "SIGMACOLOR_WORKERS";

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub algorithms: Vec<AlgorithmSpec>,
    #[serde(default)]
    pub recipes: Vec<String>,
    #[serde(default)]
    pub omegas: Vec<u64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub random: Option<RandomSpec>,
    /// Defaults for parameters the recipes leave out.
    #[serde(default)]
    pub epsilon: Option<Rational>,
    #[serde(default)]
    pub gamma: Option<Rational>,
    #[serde(default)]
    pub n: Option<u32>,
}

impl GridConfig {
    pub fn from_json(text: &str) -> Result<Self, GridError> {
        serde_json::from_str(text).map_err(|e| GridError::Config(e.to_string()))
    }

    pub fn defaults(&self) -> Defaults {
        let base = Defaults::default();
        Defaults {
            epsilon: self.epsilon.clone().unwrap_or(base.epsilon),
            gamma: self.gamma.clone().unwrap_or(base.gamma),
            n: self.n.or(base.n),
        }
    }
}

#[derive(Debug, Error)]
pub enum GridError {
    #[error("invalid grid config: {0}")]
    Config(String),
    #[error("recipe {text:?}: {source}")]
    Recipe { text: String, source: RecipeError },
    #[error("{algorithm} on {recipe}: {source}")]
    Build {
        algorithm: String,
        recipe: String,
        source: AlgorithmError,
    },
    #[error("{algorithm} on {recipe} (omega={omega}): {source}")]
    Game {
        algorithm: String,
        recipe: String,
        omega: u64,
        source: GameError,
    },
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRow {
    pub algorithm: String,
    pub recipe: String,
    pub omega: u64,
    pub report: GameReport,
    /// Only for block algorithms: colors within the block bound for the
    /// measured clique number.
    pub block_bound_ok: Option<bool>,
}

impl GridRow {
    pub fn passed(&self) -> bool {
        self.report.passed() && self.block_bound_ok != Some(false)
    }
}

enum Job<'a> {
    Recipe {
        algorithm: &'a AlgorithmSpec,
        recipe: &'a SchemaParams,
        omega: u64,
    },
    Random {
        algorithm: &'a AlgorithmSpec,
        spec: &'a RandomSpec,
        index: usize,
    },
}

/// Worker count from [`WORKERS_ENV`]; `None` leaves rayon's default.
pub fn workers_from_env() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

pub fn experiment_grid(config: &GridConfig) -> Result<Vec<GridRow>, GridError> {
    let defaults = config.defaults();
    let recipes = config
        .recipes
        .iter()
        .map(|text| {
            text.parse::<RecipeExpr>()
                .and_then(|expr| expr.resolve(&defaults))
                .map_err(|source| GridError::Recipe {
                    text: text.clone(),
                    source,
                })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut jobs = Vec::new();
    for algorithm in &config.algorithms {
        for recipe in &recipes {
            for &omega in &config.omegas {
                jobs.push(Job::Recipe {
                    algorithm,
                    recipe,
                    omega,
                });
            }
        }
    }
    if let Some(spec) = &config.random {
        for algorithm in &config.algorithms {
            for index in 0..spec.count {
                jobs.push(Job::Random { algorithm, spec, index });
            }
        }
    }

    let run = || jobs.par_iter().map(|job| run_job(job, config.seed)).collect::<Result<Vec<_>, _>>();
    match workers_from_env() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| GridError::Pool(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn block_bound_ok(algorithm: &AlgorithmSpec, default_sigma: &Rational, report: &GameReport) -> Option<bool> {
    let (sigma, b) = algorithm.block_params(default_sigma)?;
    let bound = block_color_bound(phi(&sigma, b), b, report.clique_number as u64);
    Some(report.colors_used as u64 <= bound)
}

fn run_job(job: &Job<'_>, seed: u64) -> Result<GridRow, GridError> {
    match *job {
        Job::Recipe {
            algorithm,
            recipe,
            omega,
        } => {
            let build_err = |source| GridError::Build {
                algorithm: algorithm.to_string(),
                recipe: recipe.to_string(),
                source,
            };
            let mut algo = algorithm.build(recipe.sigma()).map_err(build_err)?;
            let transcript = run_game(&mut algo, &mut recipe.presenter(omega)).map_err(|source| GridError::Game {
                algorithm: algorithm.to_string(),
                recipe: recipe.to_string(),
                omega,
                source,
            })?;
            let report = evaluate(&transcript, recipe, omega);
            Ok(GridRow {
                algorithm: algo.name(),
                recipe: recipe.to_string(),
                omega,
                block_bound_ok: block_bound_ok(algorithm, recipe.sigma(), &report),
                report,
            })
        }
        Job::Random { algorithm, spec, index } => {
            // Block algorithms get instances within their own length cap.
            let spec = match algorithm.block_params(&spec.sigma) {
                Some((sigma, _)) => spec.with_sigma(sigma.min(spec.sigma.clone())),
                None => spec.clone(),
            };
            let label = format!("random(seed={seed},index={index})");
            let intervals = seeded_instance(seed, index as u64, &spec);
            let omega = clique_number(&intervals) as u64;
            let mut algo = algorithm.build(&spec.sigma).map_err(|source| GridError::Build {
                algorithm: algorithm.to_string(),
                recipe: label.clone(),
                source,
            })?;
            let mut presenter = FixedSequence::new(intervals);
            let transcript = run_game(&mut algo, &mut presenter).map_err(|source| GridError::Game {
                algorithm: algorithm.to_string(),
                recipe: label.clone(),
                omega,
                source,
            })?;
            let region = Interval::new(Rational::zero(), &spec.window + &spec.sigma).expect("window is nonempty");
            // Any proper coloring needs at least omega colors.
            let report = evaluate_with(&transcript, omega, omega, &spec.sigma, &region);
            Ok(GridRow {
                algorithm: algo.name(),
                recipe: label,
                omega,
                block_bound_ok: block_bound_ok(algorithm, &spec.sigma, &report),
                report,
            })
        }
    }
}

pub const CSV_HEADER: [&str; 11] = [
    "algorithm",
    "recipe",
    "omega",
    "colors_used",
    "guaranteed",
    "clique",
    "ratio",
    "proper",
    "sigma_ok",
    "region_ok",
    "block_bound_ok",
];

/// Writes the rows as CSV. `ratio` is `colors_used / omega`, rounded to four
/// decimals.
pub fn write_csv<W: io::Write>(rows: &[GridRow], out: W) -> Result<(), GridError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        let r = &row.report;
        let ratio = if row.omega == 0 {
            String::new()
        } else {
            format!("{:.4}", r.colors_used as f64 / row.omega as f64)
        };
        w.write_record([
            row.algorithm.clone(),
            row.recipe.clone(),
            row.omega.to_string(),
            r.colors_used.to_string(),
            r.guaranteed.to_string(),
            r.clique_number.to_string(),
            ratio,
            r.proper.to_string(),
            r.sigma_ok.to_string(),
            r.region_ok.to_string(),
            row.block_bound_ok.map(|b| b.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

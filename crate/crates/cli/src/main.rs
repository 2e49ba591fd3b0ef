//! `sigmacolor`: play single games, run experiment grids, replay transcripts
//! and print recurrence tables.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad
//! flags or malformed input.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sigmacolor::harness::{evaluate_with, experiment_grid, write_csv, GridConfig, GridError};
use sigmacolor::presenters::recurrence::{table, Family};
use sigmacolor::presenters::{Defaults, RecipeExpr};
use sigmacolor::{run_game, AlgorithmSpec, Interval, Rational, Transcript};

const CHECK_FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;
const TOLERANCE: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "sigmacolor", version, about = "Online coloring of intervals with lengths in [1, sigma]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game and print its report as JSON.
    Play(PlayArgs),
    /// Run an experiment grid from a JSON config and write CSV.
    Grid {
        #[arg(long)]
        config: PathBuf,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-validate a saved transcript.
    Replay {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        omega: u64,
        #[arg(long)]
        sigma: Rational,
        /// `M` for [0, M], or `a,b`.
        #[arg(long, value_parser = parse_region)]
        region: Interval,
    },
    /// Print the exact recurrence next to its closed form.
    Table {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        iterations: u32,
        #[arg(long, default_value = "1/2")]
        gamma: Rational,
    },
}

#[derive(clap::Args)]
struct PlayArgs {
    /// `firstfit`, `block` or `block(sigma=..,b=..)`.
    #[arg(long)]
    algorithm: AlgorithmSpec,
    /// e.g. `clique`, `lower53(lower32(base))`, `lower52(base,gamma=1/2,n=5)`.
    #[arg(long)]
    recipe: RecipeExpr,
    #[arg(long)]
    omega: u64,
    /// Block algorithm sigma; defaults to the recipe's maximum length.
    #[arg(long)]
    sigma: Option<Rational>,
    /// Block algorithm b; defaults to the denominator of sigma.
    #[arg(long)]
    b: Option<u64>,
    /// Total epsilon for constructions that leave it out.
    #[arg(long)]
    epsilon: Option<Rational>,
    #[arg(long)]
    gamma: Option<Rational>,
    #[arg(long)]
    n: Option<u32>,
    /// Transcript JSON destination.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failures that mean the input itself was bad (exit 2), as opposed to a
/// game or transcript that did not pass its checks (exit 1).
#[derive(Debug)]
struct BadInput(anyhow::Error);

impl std::fmt::Display for BadInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for BadInput {}

fn bad(e: impl Into<anyhow::Error>) -> anyhow::Error {
    BadInput(e.into()).into()
}

fn parse_region(text: &str) -> Result<Interval, String> {
    let (left, right) = match text.split_once(',') {
        Some((a, b)) => (a.trim().parse::<Rational>(), b.trim().parse::<Rational>()),
        None => (Ok(Rational::zero()), text.trim().parse::<Rational>()),
    };
    let left = left.map_err(|e| e.to_string())?;
    let right = right.map_err(|e| e.to_string())?;
    Interval::new(left, right).map_err(|e| e.to_string())
}

fn verdict(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(CHECK_FAILED)
    }
}

fn print_json(value: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn play(args: PlayArgs) -> Result<ExitCode> {
    let base = Defaults::default();
    let defaults = Defaults {
        epsilon: args.epsilon.unwrap_or(base.epsilon),
        gamma: args.gamma.unwrap_or(base.gamma),
        n: args.n.or(base.n),
    };
    let recipe = args.recipe.resolve(&defaults).map_err(bad)?;

    let spec = match args.algorithm {
        AlgorithmSpec::Block { sigma, b } => AlgorithmSpec::Block {
            sigma: args.sigma.or(sigma),
            b: args.b.or(b),
        },
        AlgorithmSpec::FirstFit if args.sigma.is_some() || args.b.is_some() => {
            return Err(bad(anyhow::anyhow!("--sigma and --b only apply to the block algorithm")));
        }
        spec => spec,
    };
    let mut algorithm = spec.build(recipe.sigma()).map_err(bad)?;

    let mut presenter = recipe.presenter(args.omega);
    let transcript = match run_game(algorithm.as_mut(), presenter.as_mut()) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(CHECK_FAILED));
        }
    };
    if let Some(path) = &args.out {
        fs::write(path, transcript.to_json()).with_context(|| format!("writing {}", path.display()))?;
    }

    let region = Interval::new(Rational::zero(), recipe.region().clone())?;
    let report = evaluate_with(
        &transcript,
        args.omega,
        recipe.guaranteed_colors(args.omega),
        recipe.sigma(),
        &region,
    );
    let mut summary = json!({
        "algorithm": algorithm.name(),
        "recipe": recipe.to_string(),
        "sigma": recipe.sigma().to_string(),
        "region": recipe.region().to_string(),
        "branch": presenter.branch().map(|b| format!("{b:?}")),
        "passed": report.passed(),
    });
    summary["report"] = serde_json::to_value(&report)?;
    print_json(&summary)?;
    Ok(verdict(report.passed()))
}

fn grid(config: PathBuf, out: Option<PathBuf>) -> Result<ExitCode> {
    let text = fs::read_to_string(&config)
        .with_context(|| format!("reading {}", config.display()))
        .map_err(bad)?;
    let cfg = GridConfig::from_json(&text).map_err(bad)?;
    let rows = match experiment_grid(&cfg) {
        Ok(rows) => rows,
        Err(e @ (GridError::Game { .. } | GridError::Pool(_))) => {
            eprintln!("error: {e}");
            return Ok(ExitCode::from(CHECK_FAILED));
        }
        Err(e) => return Err(bad(e)),
    };
    match &out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(&rows, io::BufWriter::new(file))?;
        }
        None => write_csv(&rows, io::stdout().lock())?,
    }
    let failed = rows.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        eprintln!("{failed} of {} rows failed", rows.len());
    }
    Ok(verdict(failed == 0))
}

fn replay(input: PathBuf, omega: u64, sigma: Rational, region: Interval) -> Result<ExitCode> {
    let text = fs::read_to_string(&input)
        .with_context(|| format!("reading {}", input.display()))
        .map_err(bad)?;
    let transcript = Transcript::from_json(&text)
        .with_context(|| format!("parsing {}", input.display()))
        .map_err(bad)?;
    let report = evaluate_with(&transcript, omega, 0, &sigma, &region);
    let passed = report.passed();
    print_json(&json!({ "passed": passed, "report": report }))?;
    Ok(verdict(passed))
}

fn print_table(family: Family, iterations: u32, gamma: Rational) -> Result<ExitCode> {
    let rows = table(family, iterations, &gamma).map_err(bad)?;
    let mut out = io::stdout().lock();
    writeln!(out, "# {family}, gamma={gamma}; columns marked ~ are approximate")?;
    writeln!(
        out,
        "{:>3}  {:>14}  {:>14}  {:>14}  {:>16}  {:>16}  {:>10}",
        "k", "alpha~", "sigma", "M", "closed form~", "alpha (exact)", "diff~"
    )?;
    let mut worst: f64 = 0.0;
    for row in &rows {
        let diff = row.discrepancy();
        worst = worst.max(diff);
        writeln!(
            out,
            "{:>3}  {:>14.10}  {:>14}  {:>14}  {:>16.10}  {:>16}  {:>10.1e}",
            row.k,
            row.alpha.to_f64(),
            format!("{}+eps", row.sigma),
            format!("{}+eps", row.region),
            row.closed_form,
            row.alpha.to_string(),
            diff
        )?;
    }
    if worst > TOLERANCE {
        eprintln!("closed form disagrees with the recurrence by {worst:e}");
    }
    Ok(verdict(worst <= TOLERANCE))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Play(args) => play(args),
        Command::Grid { config, out } => grid(config, out),
        Command::Replay {
            input,
            omega,
            sigma,
            region,
        } => replay(input, omega, sigma, region),
        Command::Table {
            family,
            iterations,
            gamma,
        } => print_table(family, iterations, gamma),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<BadInput>() {
                ExitCode::from(BAD_INPUT)
            } else {
                ExitCode::from(CHECK_FAILED)
            }
        }
    }
}

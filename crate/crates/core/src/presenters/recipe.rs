//! Schema recipes: the clique base and the lifting constructions built on it.
//!
//! Text format: `base`, `lower32(base,eps=1/20)`,
//! `lower52(lower53(base),gamma=1/2,n=5,eps=1/100)`. `clique` is accepted for
//! `base`, a lifting with no inner recipe lifts `base`, and omitted parameters
//! come from [`Defaults`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::recurrence::{split_depth, step, Family, RecurrenceError};
use super::staged::Frame;
use super::{clique_presenter, lower32, lower52, lower53, lower74, Presenter};
use crate::rational::{Rational, RationalError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecipeError {
    #[error("recipe syntax error at byte {at}: {message}")]
    Syntax { at: usize, message: String },
    #[error("unknown recipe {0:?}")]
    UnknownName(String),
    #[error("{recipe} does not take parameter {key:?}")]
    UnknownKey { recipe: String, key: String },
    #[error("parameter {0:?} given twice")]
    DuplicateKey(String),
    #[error("invalid value for {key}: {message}")]
    Value { key: String, message: String },
    #[error("epsilon must be positive, got {0}")]
    Epsilon(Rational),
    #[error("n = {n} is below the split depth {required} required for gamma = {gamma}")]
    Depth { n: u32, required: u32, gamma: Rational },
    #[error(transparent)]
    Gamma(#[from] RecurrenceError),
}

/// A strategy family with its exact `(alpha, sigma, M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaParams {
    alpha: Rational,
    sigma: Rational,
    region: Rational,
    recipe: Recipe,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Base,
    Lower32 {
        inner: Box<SchemaParams>,
        epsilon: Rational,
    },
    Lower53 {
        inner: Box<SchemaParams>,
        epsilon: Rational,
    },
    Lower74 {
        inner: Box<SchemaParams>,
        epsilon: Rational,
    },
    Lower52 {
        inner: Box<SchemaParams>,
        gamma: Rational,
        n: u32,
        epsilon: Rational,
    },
}

fn positive(epsilon: Rational) -> Result<Rational, RecipeError> {
    if epsilon.is_positive() {
        Ok(epsilon)
    } else {
        Err(RecipeError::Epsilon(epsilon))
    }
}

fn floor_u64(x: Rational) -> u64 {
    x.floor().to_u64().expect("omega-sized quantity fits in u64")
}

fn ceil_u64(x: Rational) -> u64 {
    x.ceil().to_u64().expect("omega-sized quantity fits in u64")
}

impl SchemaParams {
    /// The `(1, 1, 1)` clique schema.
    pub fn base() -> Self {
        SchemaParams {
            alpha: Rational::one(),
            sigma: Rational::one(),
            region: Rational::one(),
            recipe: Recipe::Base,
        }
    }

    pub fn lower32(inner: SchemaParams, epsilon: Rational) -> Result<Self, RecipeError> {
        let epsilon = positive(epsilon)?;
        Ok(SchemaParams {
            alpha: step(Family::Lower32, &inner.alpha, &Rational::zero()),
            sigma: &inner.region + &epsilon,
            region: &inner.region + &Rational::one() + &epsilon,
            recipe: Recipe::Lower32 {
                inner: Box::new(inner),
                epsilon,
            },
        })
    }

    pub fn lower53(inner: SchemaParams, epsilon: Rational) -> Result<Self, RecipeError> {
        let epsilon = positive(epsilon)?;
        Ok(SchemaParams {
            alpha: step(Family::Lower53, &inner.alpha, &Rational::zero()),
            sigma: &inner.region + &epsilon,
            region: &inner.region + &Rational::from(2) + &epsilon,
            recipe: Recipe::Lower53 {
                inner: Box::new(inner),
                epsilon,
            },
        })
    }

    pub fn lower74(inner: SchemaParams, epsilon: Rational) -> Result<Self, RecipeError> {
        let epsilon = positive(epsilon)?;
        let two = Rational::from(2);
        Ok(SchemaParams {
            alpha: step(Family::Lower74, &inner.alpha, &Rational::zero()),
            sigma: &inner.region * &two + epsilon.clone(),
            region: &inner.region * &two + &two + &epsilon,
            recipe: Recipe::Lower74 {
                inner: Box::new(inner),
                epsilon,
            },
        })
    }

    /// Requires `gamma` in `(0, 1)` and `n` at least [`split_depth`].
    pub fn lower52(inner: SchemaParams, gamma: Rational, n: u32, epsilon: Rational) -> Result<Self, RecipeError> {
        let epsilon = positive(epsilon)?;
        let required = split_depth(&gamma)?;
        if n < required {
            return Err(RecipeError::Depth { n, required, gamma });
        }
        let size = Rational::from(BigInt::from(4).pow(n)) * &inner.region + epsilon.clone();
        Ok(SchemaParams {
            alpha: step(Family::Lower52, &inner.alpha, &gamma),
            sigma: size.clone(),
            region: size,
            recipe: Recipe::Lower52 {
                inner: Box::new(inner),
                gamma,
                n,
                epsilon,
            },
        })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    /// Longest interval length the strategy may present.
    pub fn sigma(&self) -> &Rational {
        &self.sigma
    }

    /// `M`: the strategy stays inside `[0, M]`.
    pub fn region(&self) -> &Rational {
        &self.region
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    pub fn inner(&self) -> Option<&SchemaParams> {
        match &self.recipe {
            Recipe::Base => None,
            Recipe::Lower32 { inner, .. }
            | Recipe::Lower53 { inner, .. }
            | Recipe::Lower74 { inner, .. }
            | Recipe::Lower52 { inner, .. } => Some(inner),
        }
    }

    /// Number of lifting constructions in the recipe.
    pub fn applications(&self) -> u32 {
        self.inner().map_or(0, |inner| 1 + inner.applications())
    }

    /// Clique size of each inner game when this strategy is played at `omega`.
    pub fn inner_omega(&self, omega: u64) -> u64 {
        let Some(inner) = self.inner() else {
            return 0;
        };
        let w = Rational::from(omega);
        let one = Rational::one();
        match &self.recipe {
            Recipe::Base => 0,
            Recipe::Lower32 { .. } | Recipe::Lower74 { .. } => floor_u64(w / (&inner.alpha + &one)),
            Recipe::Lower53 { .. } => floor_u64(w / (&inner.alpha + &Rational::from(2))),
            Recipe::Lower52 { .. } => omega / 2,
        }
    }

    /// Colors each inner game is played until. Capped so that the separation
    /// phases always find enough intervals outside the push set.
    pub fn inner_target(&self, omega: u64) -> u64 {
        let Some(inner) = self.inner() else {
            return 0;
        };
        let w = self.inner_omega(omega);
        let c = inner.guaranteed_colors(w);
        match &self.recipe {
            Recipe::Base => 0,
            Recipe::Lower32 { .. } | Recipe::Lower74 { .. } => c.min(omega - w),
            Recipe::Lower53 { .. } => c.min(omega - 2 * w),
            Recipe::Lower52 { .. } => c,
        }
    }

    /// Exact number of colors the strategy forces on any proper algorithm at
    /// clique size `omega`.
    pub fn guaranteed_colors(&self, omega: u64) -> u64 {
        let w = self.inner_omega(omega);
        let c = self.inner_target(omega);
        match &self.recipe {
            Recipe::Base => omega,
            Recipe::Lower32 { .. } => c + omega,
            Recipe::Lower53 { .. } => c + w + omega,
            Recipe::Lower74 { inner, .. } => {
                let threshold = Rational::from(omega) / (&inner.alpha * &Rational::from(2) + Rational::from(2));
                c + omega + ceil_u64(threshold).min(w)
            }
            Recipe::Lower52 { gamma, n, .. } => lower52_branches(omega, c, gamma, *n).into_iter().min().unwrap_or(0),
        }
    }

    pub fn presenter(&self, omega: u64) -> Box<dyn Presenter> {
        self.presenter_at(omega, &Rational::zero())
    }

    /// The strategy for clique size `omega`, shifted to start at `offset`.
    pub fn presenter_at(&self, omega: u64, offset: &Rational) -> Box<dyn Presenter> {
        let Some(inner) = self.inner() else {
            return Box::new(clique_presenter(omega, offset.clone()));
        };
        let epsilon = match &self.recipe {
            Recipe::Base => unreachable!(),
            Recipe::Lower32 { epsilon, .. }
            | Recipe::Lower53 { epsilon, .. }
            | Recipe::Lower74 { epsilon, .. }
            | Recipe::Lower52 { epsilon, .. } => epsilon.clone(),
        };
        let frame = Frame {
            inner: inner.clone(),
            omega,
            inner_omega: self.inner_omega(omega),
            target: self.inner_target(omega) as usize,
            epsilon,
            offset: offset.clone(),
        };
        match &self.recipe {
            Recipe::Base => unreachable!(),
            Recipe::Lower32 { .. } => lower32::presenter(frame),
            Recipe::Lower53 { .. } => lower53::presenter(frame),
            Recipe::Lower74 { .. } => lower74::presenter(frame),
            Recipe::Lower52 { gamma, n, .. } => lower52::presenter(frame, gamma.clone(), *n),
        }
    }
}

/// Forced colors in the union, bridge and double-bridge branches, given `c`
/// colors per inner game.
pub fn lower52_branches(omega: u64, c: u64, gamma: &Rational, n: u32) -> [u64; 3] {
    let w = omega / 2;
    let c_q = Rational::from(c);
    let one = Rational::one();
    let growth = (&one + &(gamma / &Rational::from(3))).pow(n);
    let union = ceil_u64(growth * &c_q) + w;
    let shared = ceil_u64((&one - gamma) * c_q);
    let quarter = ceil_u64(Rational::new(omega as i64, 4));
    let bridge = 2 * w + quarter + shared;
    let double = 2 * w + (w + 1).saturating_sub(quarter) + shared;
    [union, bridge, double]
}

impl fmt::Display for SchemaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.recipe {
            Recipe::Base => f.write_str("base"),
            Recipe::Lower32 { inner, epsilon } => write!(f, "lower32({inner},eps={epsilon})"),
            Recipe::Lower53 { inner, epsilon } => write!(f, "lower53({inner},eps={epsilon})"),
            Recipe::Lower74 { inner, epsilon } => write!(f, "lower74({inner},eps={epsilon})"),
            Recipe::Lower52 { inner, gamma, n, epsilon } => {
                write!(f, "lower52({inner},gamma={gamma},n={n},eps={epsilon})")
            }
        }
    }
}

/// Values used for parameters a recipe leaves out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defaults {
    /// Total epsilon, shared equally by the lifting constructions that do not
    /// set their own.
    pub epsilon: Rational,
    pub gamma: Rational,
    /// `None` means the split depth of `gamma`.
    pub n: Option<u32>,
}

impl Default for Defaults {
    fn default() -> Self {
        Defaults {
            epsilon: Rational::new(1, 10),
            gamma: Rational::new(1, 2),
            n: None,
        }
    }
}

/// Parsed recipe text, before defaults are filled in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecipeExpr {
    Base,
    Lift {
        family: Family,
        inner: Box<RecipeExpr>,
        epsilon: Option<Rational>,
        gamma: Option<Rational>,
        n: Option<u32>,
    },
}

impl RecipeExpr {
    fn applications(&self) -> u32 {
        match self {
            RecipeExpr::Base => 0,
            RecipeExpr::Lift { inner, .. } => 1 + inner.applications(),
        }
    }

    pub fn resolve(&self, defaults: &Defaults) -> Result<SchemaParams, RecipeError> {
        let share = match self.applications() {
            0 => defaults.epsilon.clone(),
            k => &defaults.epsilon / &Rational::from(k),
        };
        self.build(defaults, &share)
    }

    fn build(&self, defaults: &Defaults, share: &Rational) -> Result<SchemaParams, RecipeError> {
        match self {
            RecipeExpr::Base => Ok(SchemaParams::base()),
            RecipeExpr::Lift {
                family,
                inner,
                epsilon,
                gamma,
                n,
            } => {
                let inner = inner.build(defaults, share)?;
                let epsilon = epsilon.clone().unwrap_or_else(|| share.clone());
                match family {
                    Family::Lower32 => SchemaParams::lower32(inner, epsilon),
                    Family::Lower53 => SchemaParams::lower53(inner, epsilon),
                    Family::Lower74 => SchemaParams::lower74(inner, epsilon),
                    Family::Lower52 => {
                        let gamma = gamma.clone().unwrap_or_else(|| defaults.gamma.clone());
                        let n = match n.or(defaults.n) {
                            Some(n) => n,
                            None => split_depth(&gamma)?,
                        };
                        SchemaParams::lower52(inner, gamma, n, epsilon)
                    }
                }
            }
        }
    }
}

impl fmt::Display for RecipeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecipeExpr::Base => f.write_str("base"),
            RecipeExpr::Lift {
                family,
                inner,
                epsilon,
                gamma,
                n,
            } => {
                write!(f, "{family}({inner}")?;
                if let Some(g) = gamma {
                    write!(f, ",gamma={g}")?;
                }
                if let Some(n) = n {
                    write!(f, ",n={n}")?;
                }
                if let Some(e) = epsilon {
                    write!(f, ",eps={e}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, RecipeError> {
        Err(RecipeError::Syntax {
            at: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    /// Run of characters up to the next delimiter.
    fn token(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.find(|c: char| "(),=".contains(c) || c.is_whitespace()).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn expr(&mut self) -> Result<RecipeExpr, RecipeError> {
        let start = self.pos;
        let name = self.token();
        if name.is_empty() {
            return self.error("expected a recipe name");
        }
        let family = match name {
            "base" | "clique" => {
                if self.eat('(') && !self.eat(')') {
                    return self.error("base takes no arguments");
                }
                return Ok(RecipeExpr::Base);
            }
            "lower32" => Family::Lower32,
            "lower53" => Family::Lower53,
            "lower74" => Family::Lower74,
            "lower52" => Family::Lower52,
            other => {
                self.pos = start;
                return Err(RecipeError::UnknownName(other.to_string()));
            }
        };
        let mut inner = None;
        let mut epsilon = None;
        let mut gamma = None;
        let mut n = None;
        if self.eat('(') && !self.eat(')') {
            loop {
                let save = self.pos;
                let word = self.token();
                if self.eat('=') {
                    let value = self.token();
                    let key = word;
                    match (key, family) {
                        ("eps" | "epsilon", _) => set(&mut epsilon, key, parse_rational(key, value)?)?,
                        ("gamma", Family::Lower52) => set(&mut gamma, key, parse_rational(key, value)?)?,
                        ("n", Family::Lower52) => {
                            let v = value.parse::<u32>().map_err(|e| RecipeError::Value {
                                key: key.to_string(),
                                message: e.to_string(),
                            })?;
                            set(&mut n, key, v)?
                        }
                        _ => {
                            return Err(RecipeError::UnknownKey {
                                recipe: family.to_string(),
                                key: key.to_string(),
                            })
                        }
                    }
                } else {
                    self.pos = save;
                    if inner.is_some() {
                        return self.error("more than one inner recipe");
                    }
                    inner = Some(self.expr()?);
                }
                if self.eat(')') {
                    break;
                }
                if !self.eat(',') {
                    return self.error("expected ',' or ')'");
                }
            }
        }
        Ok(RecipeExpr::Lift {
            family,
            inner: Box::new(inner.unwrap_or(RecipeExpr::Base)),
            epsilon,
            gamma,
            n,
        })
    }
}

fn set<T>(slot: &mut Option<T>, key: &str, value: T) -> Result<(), RecipeError> {
    if slot.replace(value).is_some() {
        return Err(RecipeError::DuplicateKey(key.to_string()));
    }
    Ok(())
}

fn parse_rational(key: &str, value: &str) -> Result<Rational, RecipeError> {
    value.parse().map_err(|e: RationalError| RecipeError::Value {
        key: key.to_string(),
        message: e.to_string(),
    })
}

impl FromStr for RecipeExpr {
    type Err = RecipeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { text: s, pos: 0 };
        let expr = p.expr()?;
        if p.peek().is_some() {
            return p.error("trailing input");
        }
        Ok(expr)
    }
}

impl FromStr for SchemaParams {
    type Err = RecipeError;

    /// Parses with [`Defaults::default`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<RecipeExpr>()?.resolve(&Defaults::default())
    }
}

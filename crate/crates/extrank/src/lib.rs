//! Extension-ranking semantics for abstract argumentation.
//!
//! An argumentation framework is a directed graph of arguments and attacks.
//! Classical extension semantics select the jointly acceptable sets of
//! arguments; an extension-ranking semantics instead orders *every* subset of
//! arguments by how plausible it is to be accepted. This crate provides:
//!
//! * the framework model with defence operators ([`framework`]),
//! * enumeration of classical extensions ([`semantics`]),
//! * base relations comparing two sets under one criterion ([`relations`]),
//! * argument-ranking and gradual semantics ([`gradual`]),
//! * lexicographic, Copeland, group-comparison and order-based rankings
//!   ([`spec`], [`engine`]),
//! * executable principle checkers with a seeded fuzzer ([`principles`],
//!   [`fuzz`]),
//! * APX parsing, JSON reports and DOT output ([`apx`], [`report`]).
//!
//! # Example
//! ```
//! use extrank::{apx, engine::Ranker, spec::RankingSpec, Verdict};
//!
//! let f = apx::parse_apx("arg(h). arg(i). arg(j). att(h,i). att(i,j).").unwrap();
//! let spec: RankingSpec = "r-co".parse().unwrap();
//! let ranker = Ranker::new(f.clone(), spec);
//! let hj = f.parse_set("h,j").unwrap();
//! let h = f.parse_set("h").unwrap();
//! assert_eq!(ranker.compare(&hj, &h).unwrap(), Verdict::Better);
//! ```

pub mod apx;
pub mod argset;
pub mod corpus;
pub mod engine;
pub mod fixtures;
pub mod framework;
pub mod fuzz;
pub mod gradual;
pub mod principles;
pub mod relations;
pub mod report;
pub mod semantics;
pub mod spec;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use argset::ArgSet;
pub use framework::Framework;

/// Default largest framework accepted by extension enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;
/// Largest framework for which Copeland balances are computed.
pub const COPE_CAP: usize = 12;
/// Largest framework materialised over its whole power set.
pub const MATERIALIZE_CAP: usize = 12;
/// Environment variable overriding [`DEFAULT_ENUMERATION_CAP`].
pub const CAP_ENV_VAR: &str = "EXTRANK_CAP";

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("unknown argument `{0}`")]
    UnknownArgument(String),
    #[error("argument `{0}` declared twice")]
    DuplicateArgument(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("framework has {n} arguments, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("Copeland combination needs at most {cap} arguments, framework has {n}")]
    TooLargeForCope { n: usize, cap: usize },
    #[error("base relation `{0}` compares pairs and has no unary value")]
    NotUnary(String),
    #[error("sets belong to a framework of a different size")]
    FrameworkMismatch,
    #[error("h-categoriser iteration did not converge within {0} steps")]
    NoConvergence(usize),
    #[error("frameworks share argument `{0}`")]
    NotDisjoint(String),
    #[error("sets do not partition the framework into unconnected parts")]
    NotAPartition,
    #[error("relabelling is not a bijection")]
    NotABijection,
    #[error("invalid ranking spec `{0}`")]
    InvalidSpec(String),
    #[error("invalid principle `{0}`")]
    InvalidPrinciple(String),
    #[error("invalid semantics `{0}`")]
    InvalidSemantics(String),
    #[error("corpus error: {0}")]
    Corpus(String),
}

impl Error {
    /// Whether the error reports an exceeded resource cap.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::TooLarge { .. } | Error::TooLargeForCope { .. })
    }
}

/// Crate-wide result type.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Outcome of comparing an ordered pair of sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// The first set is strictly more plausible.
    Better,
    /// The second set is strictly more plausible.
    Worse,
    /// Each set is at least as plausible as the other.
    Equivalent,
    /// Neither set is at least as plausible as the other.
    Incomparable,
}

impl Verdict {
    /// The verdict for the swapped pair.
    pub fn flip(self) -> Self {
        match self {
            Verdict::Better => Verdict::Worse,
            Verdict::Worse => Verdict::Better,
            v => v,
        }
    }

    /// Whether the first set is at least as plausible as the second.
    pub fn is_weakly_better(self) -> bool {
        matches!(self, Verdict::Better | Verdict::Equivalent)
    }

    /// Builds a verdict from the two weak comparisons.
    pub fn from_weak(geq: bool, leq: bool) -> Self {
        match (geq, leq) {
            (true, true) => Verdict::Equivalent,
            (true, false) => Verdict::Better,
            (false, true) => Verdict::Worse,
            (false, false) => Verdict::Incomparable,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Better => "better",
            Verdict::Worse => "worse",
            Verdict::Equivalent => "equivalent",
            Verdict::Incomparable => "incomparable",
        })
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "better" => Ok(Verdict::Better),
            "worse" => Ok(Verdict::Worse),
            "equivalent" => Ok(Verdict::Equivalent),
            "incomparable" => Ok(Verdict::Incomparable),
            other => Err(Error::Corpus(format!("unknown verdict `{other}`"))),
        }
    }
}

/// Resource limits applied to enumeration-heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest framework for extension enumeration.
    pub enumeration: usize,
    /// Largest framework for Copeland balances.
    pub cope: usize,
    /// Largest framework materialised over all subsets.
    pub materialize: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: DEFAULT_ENUMERATION_CAP,
            cope: COPE_CAP,
            materialize: MATERIALIZE_CAP,
        }
    }
}

impl Limits {
    /// Defaults, with the enumeration cap taken from [`CAP_ENV_VAR`] when set.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(cap) = std::env::var(CAP_ENV_VAR).ok().and_then(|v| v.parse().ok()) {
            limits.enumeration = cap;
        }
        limits
    }
}

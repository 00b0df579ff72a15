//! Declarative descriptions of extension-ranking semantics.
//!
//! Grammar (see the README for examples):
//!
//! ```text
//! spec      := preset | "ld-" σ | "lex:" rels | "cope:" rels
//!            | "gc:" gradual | "obe:" source ":" aggregator
//! preset    := "r-" ["c-"] ("ad" | "co" | "gr" | "pr" | "co-pr" | "sst")
//! rels      := relation ("," relation)*
//! source    := "ne-" σ | "cat" | "bbs-sv" | "cat-sv"
//! aggregator:= "sum" | "max" | "min" | "leximax" | "leximin"
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::gradual::GradualId;
use crate::relations::BaseRelation;
use crate::semantics::SemanticsId;
use crate::{Error, Result};

/// How per-member values are aggregated into a set value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Aggregator {
    Sum,
    Max,
    Min,
    Leximax,
    Leximin,
}

impl Aggregator {
    /// Every aggregator.
    pub const ALL: [Aggregator; 5] = [
        Aggregator::Sum,
        Aggregator::Max,
        Aggregator::Leximax,
        Aggregator::Min,
        Aggregator::Leximin,
    ];

    /// Lowercase name.
    pub fn as_str(self) -> &'static str {
        match self {
            Aggregator::Sum => "sum",
            Aggregator::Max => "max",
            Aggregator::Min => "min",
            Aggregator::Leximax => "leximax",
            Aggregator::Leximin => "leximin",
        }
    }
}

impl FromStr for Aggregator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Aggregator::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(s.to_string()))
    }
}

/// The per-argument values fed into an order-based evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EvalSource {
    /// Number of σ-extensions containing the argument.
    Ne(SemanticsId),
    /// h-categoriser score.
    Cat,
    /// Rank position under the burden-based ranking.
    BbsSv,
    /// Rank position under the h-categoriser ranking.
    CatSv,
}

impl fmt::Display for EvalSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalSource::Ne(s) => write!(f, "ne-{s}"),
            EvalSource::Cat => f.write_str("cat"),
            EvalSource::BbsSv => f.write_str("bbs-sv"),
            EvalSource::CatSv => f.write_str("cat-sv"),
        }
    }
}

impl FromStr for EvalSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cat" => Ok(EvalSource::Cat),
            "bbs-sv" => Ok(EvalSource::BbsSv),
            "cat-sv" => Ok(EvalSource::CatSv),
            _ => s
                .strip_prefix("ne-")
                .and_then(|sigma| sigma.parse().ok())
                .map(EvalSource::Ne)
                .ok_or_else(|| Error::InvalidSpec(s.to_string())),
        }
    }
}

/// An extension-ranking semantics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum RankingSpec {
    /// Extensions of σ above every other set.
    Ld(SemanticsId),
    /// Lexicographic combination of base relations.
    Lex(Vec<BaseRelation>),
    /// Copeland combination of base relations.
    Cope(Vec<BaseRelation>),
    /// Group comparison under an argument ranking.
    Gc(GradualId),
    /// Order-based evaluation of per-member values.
    Obe(EvalSource, Aggregator),
}

const PRESETS: [(&str, &[BaseRelation]); 6] = {
    use BaseRelation::*;
    [
        ("ad", &[Conflicts, Ud]),
        ("co", &[Conflicts, Ud, Dn]),
        ("gr", &[Conflicts, Ud, Dn, Mini]),
        ("pr", &[Conflicts, Ud, Maxi]),
        ("co-pr", &[Conflicts, Ud, Dn, Maxi]),
        ("sst", &[Conflicts, Ud, Dn, Unatt]),
    ]
};

impl RankingSpec {
    /// The preset `r-<name>`, or `r-c-<name>` when `cardinality` is set.
    pub fn preset(name: &str, cardinality: bool) -> Option<Self> {
        let (_, rels) = PRESETS.iter().find(|(n, _)| *n == name)?;
        let rels = rels
            .iter()
            .map(|r| if cardinality { r.cardinality() } else { *r })
            .collect();
        Some(RankingSpec::Lex(rels))
    }

    fn preset_name(&self) -> Option<String> {
        if !matches!(self, RankingSpec::Lex(_)) {
            return None;
        }
        for cardinality in [false, true] {
            for (name, _) in PRESETS {
                if RankingSpec::preset(name, cardinality).as_ref() == Some(self) {
                    let c = if cardinality { "c-" } else { "" };
                    return Some(format!("r-{c}{name}"));
                }
            }
        }
        None
    }

    /// The relations a lexicographic or Copeland spec combines.
    pub fn relations(&self) -> &[BaseRelation] {
        match self {
            RankingSpec::Lex(r) | RankingSpec::Cope(r) => r,
            _ => &[],
        }
    }
}

fn parse_relations(text: &str, whole: &str) -> Result<Vec<BaseRelation>> {
    let rels: Vec<BaseRelation> = text
        .split(',')
        .map(|r| r.trim().parse())
        .collect::<Result<_>>()
        .map_err(|_| Error::InvalidSpec(whole.to_string()))?;
    if rels.is_empty() {
        return Err(Error::InvalidSpec(whole.to_string()));
    }
    Ok(rels)
}

impl FromStr for RankingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidSpec(s.to_string());
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("r-c-") {
            return RankingSpec::preset(rest, true).ok_or_else(invalid);
        }
        if let Some(rest) = s.strip_prefix("r-") {
            return RankingSpec::preset(rest, false).ok_or_else(invalid);
        }
        if let Some(rest) = s.strip_prefix("ld-") {
            return rest.parse().map(RankingSpec::Ld).map_err(|_| invalid());
        }
        if let Some(rest) = s.strip_prefix("lex:") {
            return parse_relations(rest, s).map(RankingSpec::Lex);
        }
        if let Some(rest) = s.strip_prefix("cope:") {
            return parse_relations(rest, s).map(RankingSpec::Cope);
        }
        if let Some(rest) = s.strip_prefix("gc:") {
            return rest.parse().map(RankingSpec::Gc).map_err(|_| invalid());
        }
        if let Some(rest) = s.strip_prefix("obe:") {
            let (src, agg) = rest.rsplit_once(':').ok_or_else(invalid)?;
            let src = src.parse().map_err(|_| invalid())?;
            let agg = agg.parse().map_err(|_| invalid())?;
            return Ok(RankingSpec::Obe(src, agg));
        }
        Err(invalid())
    }
}

fn join(rels: &[BaseRelation]) -> String {
    rels.iter().map(|r| r.as_str()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RankingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = self.preset_name() {
            return f.write_str(&name);
        }
        match self {
            RankingSpec::Ld(s) => write!(f, "ld-{s}"),
            RankingSpec::Lex(r) => write!(f, "lex:{}", join(r)),
            RankingSpec::Cope(r) => write!(f, "cope:{}", join(r)),
            RankingSpec::Gc(g) => write!(f, "gc:{g}"),
            RankingSpec::Obe(src, agg) => write!(f, "obe:{src}:{}", agg.as_str()),
        }
    }
}

impl From<RankingSpec> for String {
    fn from(s: RankingSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for RankingSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_expand() {
        use BaseRelation::*;
        assert_eq!("r-co".parse::<RankingSpec>().unwrap(), RankingSpec::Lex(vec![Conflicts, Ud, Dn]));
        assert_eq!(
            "r-c-gr".parse::<RankingSpec>().unwrap(),
            RankingSpec::Lex(vec![CConflicts, CUd, CDn, Mini])
        );
        assert_eq!(
            "r-co-pr".parse::<RankingSpec>().unwrap(),
            RankingSpec::Lex(vec![Conflicts, Ud, Dn, Maxi])
        );
    }

    #[test]
    fn specs_round_trip() {
        for s in [
            "r-ad",
            "r-c-sst",
            "ld-pr",
            "lex:nonatt,strdef",
            "cope:conflicts,ud",
            "cope:ncount-cat",
            "gc:bbs",
            "obe:ne-co:sum",
            "obe:cat-sv:leximin",
        ] {
            let spec: RankingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            let json = serde_json::to_string(&spec).unwrap();
            assert_eq!(serde_json::from_str::<RankingSpec>(&json).unwrap(), spec);
        }
        assert_eq!("lex:conflicts,ud".parse::<RankingSpec>().unwrap().to_string(), "r-ad");
    }

    #[test]
    fn invalid_specs_are_rejected() {
        for s in ["", "r-xx", "ld-foo", "lex:", "lex:ud,zz", "gc:h", "obe:cat", "obe:ne-xx:sum", "obe:cat:avg"] {
            assert!(s.parse::<RankingSpec>().is_err(), "{s}");
        }
    }
}

//! Base relations: single-criterion comparisons between two sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::argset::ArgSet;
use crate::framework::Framework;
use crate::gradual::{GradualCache, GradualId};
use crate::{Error, Result, Verdict};

/// Identifier of a base relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum BaseRelation {
    /// Inclusion of internal attacks.
    Conflicts,
    /// Inclusion of undefended members.
    Ud,
    /// Inclusion of defended but missing arguments.
    Dn,
    /// Inclusion of unattacked outsiders.
    Unatt,
    /// Number of internal attacks.
    CConflicts,
    /// Number of undefended members.
    CUd,
    /// Number of defended but missing arguments.
    CDn,
    /// Number of unattacked outsiders.
    CUnatt,
    /// Subsets are preferred.
    Mini,
    /// Supersets are preferred.
    Maxi,
    /// Compares members left unattacked by the other set.
    Nonatt,
    /// Compares strongly defended members.
    Strdef,
    /// Counts strictly dominated pairs under an argument ranking.
    NCount(GradualId),
}

impl BaseRelation {
    /// Every base relation.
    pub const ALL: [BaseRelation; 14] = [
        BaseRelation::Conflicts,
        BaseRelation::Ud,
        BaseRelation::Dn,
        BaseRelation::Unatt,
        BaseRelation::CConflicts,
        BaseRelation::CUd,
        BaseRelation::CDn,
        BaseRelation::CUnatt,
        BaseRelation::Mini,
        BaseRelation::Maxi,
        BaseRelation::Nonatt,
        BaseRelation::Strdef,
        BaseRelation::NCount(GradualId::Cat),
        BaseRelation::NCount(GradualId::Bbs),
    ];

    /// The identifier used in spec strings.
    pub fn as_str(self) -> &'static str {
        match self {
            BaseRelation::Conflicts => "conflicts",
            BaseRelation::Ud => "ud",
            BaseRelation::Dn => "dn",
            BaseRelation::Unatt => "unatt",
            BaseRelation::CConflicts => "c-conflicts",
            BaseRelation::CUd => "c-ud",
            BaseRelation::CDn => "c-dn",
            BaseRelation::CUnatt => "c-unatt",
            BaseRelation::Mini => "mini",
            BaseRelation::Maxi => "maxi",
            BaseRelation::Nonatt => "nonatt",
            BaseRelation::Strdef => "strdef",
            BaseRelation::NCount(GradualId::Cat) => "ncount-cat",
            BaseRelation::NCount(GradualId::Bbs) => "ncount-bbs",
        }
    }

    /// The cardinality variant of a subset-based relation.
    pub fn cardinality(self) -> Self {
        match self {
            BaseRelation::Conflicts => BaseRelation::CConflicts,
            BaseRelation::Ud => BaseRelation::CUd,
            BaseRelation::Dn => BaseRelation::CDn,
            BaseRelation::Unatt => BaseRelation::CUnatt,
            other => other,
        }
    }

    /// Whether the relation is defined through a per-set value.
    pub fn is_unary(self) -> bool {
        matches!(
            self,
            BaseRelation::Conflicts
                | BaseRelation::Ud
                | BaseRelation::Dn
                | BaseRelation::Unatt
                | BaseRelation::CConflicts
                | BaseRelation::CUd
                | BaseRelation::CDn
                | BaseRelation::CUnatt
        )
    }
}

impl fmt::Display for BaseRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BaseRelation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BaseRelation::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::InvalidSpec(s.to_string()))
    }
}

impl From<BaseRelation> for String {
    fn from(r: BaseRelation) -> String {
        r.as_str().to_string()
    }
}

impl TryFrom<String> for BaseRelation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// The value a unary base relation assigns to one set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RelationValue {
    /// A set of attacks, indexed by position in [`Framework::attacks`].
    Attacks(ArgSet),
    /// A set of arguments.
    Args(ArgSet),
    /// A cardinality.
    Count(usize),
}

impl RelationValue {
    /// Compares two values where smaller (by inclusion or size) is better.
    pub fn compare(&self, other: &Self) -> Verdict {
        match (self, other) {
            (RelationValue::Attacks(x), RelationValue::Attacks(y))
            | (RelationValue::Args(x), RelationValue::Args(y)) => {
                Verdict::from_weak(x.is_subset(y), y.is_subset(x))
            }
            (RelationValue::Count(x), RelationValue::Count(y)) => Verdict::from_weak(x <= y, y <= x),
            _ => Verdict::Incomparable,
        }
    }
}

/// Internal attacks of `e` as attack indices.
pub fn conflicts(f: &Framework, e: &ArgSet) -> ArgSet {
    ArgSet::from_indices(
        f.attacks().len(),
        f.attacks()
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| e.contains(x) && e.contains(y))
            .map(|(k, _)| k),
    )
}

/// Members of `e` that `e` does not defend.
pub fn undefended(f: &Framework, e: &ArgSet) -> ArgSet {
    e.difference(&f.characteristic(e))
}

/// Arguments reached by the seeded defence closure but missing from `e`.
pub fn defended_not_in(f: &Framework, e: &ArgSet) -> ArgSet {
    f.f_star(e).difference(e)
}

/// Arguments outside `e` that `e` does not attack.
pub fn unattacked(f: &Framework, e: &ArgSet) -> ArgSet {
    f.full_set().difference(e).difference(&f.plus(e))
}

/// The value of a unary base relation on `e`.
pub fn relation_value(f: &Framework, id: BaseRelation, e: &ArgSet) -> Result<RelationValue> {
    let count = |s: ArgSet| RelationValue::Count(s.len());
    Ok(match id {
        BaseRelation::Conflicts => RelationValue::Attacks(conflicts(f, e)),
        BaseRelation::Ud => RelationValue::Args(undefended(f, e)),
        BaseRelation::Dn => RelationValue::Args(defended_not_in(f, e)),
        BaseRelation::Unatt => RelationValue::Args(unattacked(f, e)),
        BaseRelation::CConflicts => count(conflicts(f, e)),
        BaseRelation::CUd => count(undefended(f, e)),
        BaseRelation::CDn => count(defended_not_in(f, e)),
        BaseRelation::CUnatt => count(unattacked(f, e)),
        other => return Err(Error::NotUnary(other.to_string())),
    })
}

/// `𝒩ρ(E, E')`: pairs `(a, b) ∈ E × E'` with `a` strictly stronger than `b`.
pub fn quality_count(f: &Framework, id: GradualId, e: &ArgSet, e2: &ArgSet, cache: &GradualCache) -> Result<usize> {
    let r = cache.ranking(f, id)?;
    Ok(e.iter()
        .map(|a| e2.iter().filter(|&b| r.strictly_above(a, b)).count())
        .sum())
}

fn check_sets(f: &Framework, sets: &[&ArgSet]) -> Result<()> {
    let n = f.len();
    if sets.iter().any(|s| s.iter().any(|i| i >= n)) {
        return Err(Error::FrameworkMismatch);
    }
    Ok(())
}

/// Compares `e` against `e2` under one base relation.
pub fn compare_base(f: &Framework, id: BaseRelation, e: &ArgSet, e2: &ArgSet) -> Result<Verdict> {
    compare_base_cached(f, id, e, e2, &GradualCache::default())
}

/// [`compare_base`] with argument rankings taken from `cache`.
pub fn compare_base_cached(
    f: &Framework,
    id: BaseRelation,
    e: &ArgSet,
    e2: &ArgSet,
    cache: &GradualCache,
) -> Result<Verdict> {
    check_sets(f, &[e, e2])?;
    let counts = |x: usize, y: usize| Verdict::from_weak(x >= y, y >= x);
    Ok(match id {
        BaseRelation::Mini => Verdict::from_weak(e.is_subset(e2), e2.is_subset(e)),
        BaseRelation::Maxi => Verdict::from_weak(e2.is_subset(e), e.is_subset(e2)),
        BaseRelation::Nonatt => counts(
            e.difference(&f.plus(e2)).len(),
            e2.difference(&f.plus(e)).len(),
        ),
        BaseRelation::Strdef => counts(
            f.strongly_defended(e, e2).len(),
            f.strongly_defended(e2, e).len(),
        ),
        BaseRelation::NCount(g) => counts(
            quality_count(f, g, e, e2, cache)?,
            quality_count(f, g, e2, e, cache)?,
        ),
        unary => relation_value(f, unary, e)?.compare(&relation_value(f, unary, e2)?),
    })
}

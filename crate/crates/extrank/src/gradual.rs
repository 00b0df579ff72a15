//! Argument-ranking semantics: h-categoriser scores, burden-based ranking,
//! rank positions and extension-membership counts.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::argset::ArgSet;
use crate::framework::Framework;
use crate::semantics::ExtensionFamily;
use crate::{Error, Result};

/// Convergence tolerance of the h-categoriser iteration.
pub const CAT_TOLERANCE: f64 = 1e-9;
/// Tolerance under which two real scores count as equal.
pub const EQ_TOLERANCE: f64 = 1e-7;
/// Iteration budget of the h-categoriser.
pub const CAT_MAX_ITERATIONS: usize = 10_000;
/// Per-entry tolerance when comparing burden vectors.
pub const BURDEN_TOLERANCE: f64 = 1e-9;

/// The supported argument-ranking semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GradualId {
    /// The h-categoriser.
    Cat,
    /// The burden-based semantics.
    Bbs,
}

impl GradualId {
    /// Both semantics.
    pub const ALL: [GradualId; 2] = [GradualId::Cat, GradualId::Bbs];

    /// Lowercase name.
    pub fn as_str(self) -> &'static str {
        match self {
            GradualId::Cat => "cat",
            GradualId::Bbs => "bbs",
        }
    }
}

impl fmt::Display for GradualId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GradualId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cat" => Ok(GradualId::Cat),
            "bbs" => Ok(GradualId::Bbs),
            other => Err(Error::InvalidSpec(other.to_string())),
        }
    }
}

/// A preorder over the arguments of one framework.
///
/// `geq[a]` holds every `b` with `a ⪰ b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgRanking {
    pub geq: Vec<ArgSet>,
}

impl ArgRanking {
    /// Builds a ranking from a weak comparison `a ⪰ b`.
    pub fn from_fn(n: usize, mut ge: impl FnMut(usize, usize) -> bool) -> Self {
        let geq = (0..n)
            .map(|a| ArgSet::from_indices(n, (0..n).filter(|&b| ge(a, b))))
            .collect();
        ArgRanking { geq }
    }

    /// Number of ranked arguments.
    pub fn len(&self) -> usize {
        self.geq.len()
    }

    /// Whether no argument is ranked.
    pub fn is_empty(&self) -> bool {
        self.geq.is_empty()
    }

    /// `a ⪰ b`.
    pub fn weakly_above(&self, a: usize, b: usize) -> bool {
        self.geq[a].contains(b)
    }

    /// `a ≻ b`.
    pub fn strictly_above(&self, a: usize, b: usize) -> bool {
        self.geq[a].contains(b) && !self.geq[b].contains(a)
    }

    /// `a ≃ b`.
    pub fn equivalent(&self, a: usize, b: usize) -> bool {
        self.geq[a].contains(b) && self.geq[b].contains(a)
    }

    /// Equivalence classes from strongest to weakest, for a total preorder.
    ///
    /// Classes are ordered by the number of arguments strictly above them.
    pub fn levels(&self) -> Vec<Vec<usize>> {
        let sv = sv(self);
        let top = sv.iter().copied().max().map_or(0, |m| m + 1);
        let mut levels = vec![Vec::new(); top];
        for (a, &s) in sv.iter().enumerate() {
            levels[s].push(a);
        }
        levels.retain(|l| !l.is_empty());
        levels
    }

    /// Renders the ranking as `a > b = c > d` for a total preorder.
    pub fn describe(&self, f: &Framework) -> String {
        self.levels()
            .iter()
            .map(|l| l.iter().map(|&a| f.name(a)).collect::<Vec<_>>().join(" = "))
            .collect::<Vec<_>>()
            .join(" > ")
    }
}

/// The h-categoriser scores of every argument.
///
/// Jacobi iteration from the all-ones vector until the largest change and the
/// largest fixed-point residual both fall below [`CAT_TOLERANCE`].
pub fn cat_scores(f: &Framework) -> Result<Vec<f64>> {
    let n = f.len();
    let attackers: Vec<Vec<usize>> = (0..n).map(|a| f.attackers(a).to_vec()).collect();
    let mut x = vec![1.0; n];
    let mut next = vec![0.0; n];
    for _ in 0..CAT_MAX_ITERATIONS {
        let mut change: f64 = 0.0;
        for a in 0..n {
            let s: f64 = attackers[a].iter().map(|&b| x[b]).sum();
            next[a] = 1.0 / (1.0 + s);
            change = change.max((next[a] - x[a]).abs());
        }
        std::mem::swap(&mut x, &mut next);
        if change < CAT_TOLERANCE && cat_residual_of(&attackers, &x) <= CAT_TOLERANCE {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence(CAT_MAX_ITERATIONS))
}

fn cat_residual_of(attackers: &[Vec<usize>], x: &[f64]) -> f64 {
    attackers
        .iter()
        .enumerate()
        .map(|(a, att)| (x[a] * (1.0 + att.iter().map(|&b| x[b]).sum::<f64>()) - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Largest value of `|Cat(a)·(1 + Σ Cat(b)) − 1|` over all arguments.
pub fn cat_residual(f: &Framework, scores: &[f64]) -> f64 {
    let attackers: Vec<Vec<usize>> = (0..f.len()).map(|a| f.attackers(a).to_vec()).collect();
    cat_residual_of(&attackers, scores)
}

/// The total preorder induced by real scores, higher being stronger.
///
/// Scores within [`EQ_TOLERANCE`] of each other are equivalent.
pub fn ranking_from_scores(scores: &[f64]) -> ArgRanking {
    ArgRanking::from_fn(scores.len(), |a, b| scores[a] >= scores[b] - EQ_TOLERANCE)
}

/// Burden numbers `bur_0 .. bur_k` of every argument.
pub fn burden_vectors(f: &Framework, k: usize) -> Vec<Vec<f64>> {
    let n = f.len();
    let attackers: Vec<Vec<usize>> = (0..n).map(|a| f.attackers(a).to_vec()).collect();
    let mut out = vec![Vec::with_capacity(k + 1); n];
    let mut cur = vec![1.0; n];
    for step in 0..=k {
        if step > 0 {
            cur = (0..n)
                .map(|a| 1.0 + attackers[a].iter().map(|&b| 1.0 / cur[b]).sum::<f64>())
                .collect();
        }
        for a in 0..n {
            out[a].push(cur[a]);
        }
    }
    out
}

fn compare_burdens(x: &[f64], y: &[f64]) -> Ordering {
    for (p, q) in x.iter().zip(y) {
        if (p - q).abs() > BURDEN_TOLERANCE {
            // A lower burden is stronger.
            return if p < q { Ordering::Greater } else { Ordering::Less };
        }
    }
    Ordering::Equal
}

/// The burden-based ranking, comparing burden vectors up to `2n + 4` steps.
pub fn burden_ranking(f: &Framework) -> ArgRanking {
    let v = burden_vectors(f, 2 * f.len() + 4);
    ArgRanking::from_fn(f.len(), |a, b| compare_burdens(&v[a], &v[b]) != Ordering::Less)
}

/// Length of the longest strict chain above each argument.
pub fn sv(r: &ArgRanking) -> Vec<usize> {
    let n = r.len();
    let mut memo: Vec<Option<usize>> = vec![None; n];
    fn visit(r: &ArgRanking, a: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(v) = memo[a] {
            return v;
        }
        let v = (0..r.len())
            .filter(|&b| r.strictly_above(b, a))
            .map(|b| visit(r, b, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[a] = Some(v);
        v
    }
    (0..n).map(|a| visit(r, a, &mut memo)).collect()
}

/// Number of extensions of the family containing each argument.
pub fn ne(n: usize, family: &ExtensionFamily) -> Vec<usize> {
    (0..n).map(|a| family.count_containing(a)).collect()
}

/// Lazily computed argument rankings of one framework.
#[derive(Debug, Default)]
pub struct GradualCache {
    cat: OnceLock<Result<Vec<f64>>>,
    cat_ranking: OnceLock<Result<ArgRanking>>,
    bbs_ranking: OnceLock<ArgRanking>,
}

impl GradualCache {
    /// h-categoriser scores.
    pub fn cat(&self, f: &Framework) -> Result<&[f64]> {
        self.cat
            .get_or_init(|| cat_scores(f))
            .as_deref()
            .map_err(Clone::clone)
    }

    /// The ranking of `id`.
    pub fn ranking(&self, f: &Framework, id: GradualId) -> Result<&ArgRanking> {
        match id {
            GradualId::Cat => self
                .cat_ranking
                .get_or_init(|| cat_scores(f).map(|s| ranking_from_scores(&s)))
                .as_ref()
                .map_err(Clone::clone),
            GradualId::Bbs => Ok(self.bbs_ranking.get_or_init(|| burden_ranking(f))),
        }
    }
}

/// Computes the ranking of `id` on `f` without caching.
pub fn rank(f: &Framework, id: GradualId) -> Result<ArgRanking> {
    match id {
        GradualId::Cat => Ok(ranking_from_scores(&cat_scores(f)?)),
        GradualId::Bbs => Ok(burden_ranking(f)),
    }
}

/// The four argument-ranking principles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ArgPrinciple {
    /// Names of arguments do not influence the ranking.
    Abstraction,
    /// Unconnected arguments do not influence the ranking.
    Independence,
    /// Unattacked arguments are strictly stronger than attacked ones.
    VoidPrecedence,
    /// Unattacked arguments are equally strong.
    NonAttackedEquivalence,
}

/// Outcome of an argument-ranking principle check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgPrincipleReport {
    pub principle: ArgPrinciple,
    pub holds: bool,
    /// A violating pair of argument names.
    pub witness: Option<(String, String)>,
}

impl ArgPrincipleReport {
    fn from_witness(principle: ArgPrinciple, f: &Framework, w: Option<(usize, usize)>) -> Self {
        ArgPrincipleReport {
            principle,
            holds: w.is_none(),
            witness: w.map(|(a, b)| (f.name(a).to_string(), f.name(b).to_string())),
        }
    }
}

/// Checks abstraction against a relabelled copy: argument `i` of `f` is
/// argument `perm[i]` of the copy.
pub fn check_abstraction(id: GradualId, f: &Framework, perm: &[usize]) -> Result<ArgPrincipleReport> {
    let names = {
        let mut v = vec![String::new(); f.len()];
        for (i, &p) in perm.iter().enumerate() {
            v[p] = format!("{}'", f.name(i));
        }
        v
    };
    let g = f.relabel(perm, names)?;
    let (r, s) = (rank(f, id)?, rank(&g, id)?);
    let n = f.len();
    let w = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| r.weakly_above(a, b) != s.weakly_above(perm[a], perm[b]));
    Ok(ArgPrincipleReport::from_witness(ArgPrinciple::Abstraction, f, w))
}

/// Checks independence: restricting to any connected component leaves the
/// ranking among its arguments unchanged.
pub fn check_independence(id: GradualId, f: &Framework) -> Result<ArgPrincipleReport> {
    let r = rank(f, id)?;
    for comp in f.components() {
        let (g, old) = f.restrict(&comp);
        let s = rank(&g, id)?;
        for i in 0..old.len() {
            for j in 0..old.len() {
                if s.weakly_above(i, j) != r.weakly_above(old[i], old[j]) {
                    let w = Some((old[i], old[j]));
                    return Ok(ArgPrincipleReport::from_witness(ArgPrinciple::Independence, f, w));
                }
            }
        }
    }
    Ok(ArgPrincipleReport::from_witness(ArgPrinciple::Independence, f, None))
}

/// Checks void precedence: unattacked arguments beat attacked ones.
pub fn check_void_precedence(id: GradualId, f: &Framework) -> Result<ArgPrincipleReport> {
    let r = rank(f, id)?;
    let n = f.len();
    let w = (0..n)
        .filter(|&a| f.attackers(a).is_empty())
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| !f.attackers(b).is_empty() && !r.strictly_above(a, b));
    Ok(ArgPrincipleReport::from_witness(ArgPrinciple::VoidPrecedence, f, w))
}

/// Checks non-attacked equivalence: all unattacked arguments tie.
pub fn check_non_attacked_equivalence(id: GradualId, f: &Framework) -> Result<ArgPrincipleReport> {
    let r = rank(f, id)?;
    let free: Vec<usize> = (0..f.len()).filter(|&a| f.attackers(a).is_empty()).collect();
    let w = free
        .iter()
        .flat_map(|&a| free.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| !r.equivalent(a, b));
    Ok(ArgPrincipleReport::from_witness(ArgPrinciple::NonAttackedEquivalence, f, w))
}

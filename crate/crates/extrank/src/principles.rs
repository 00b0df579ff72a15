//! Executable checkers for the extension-ranking principles.
//!
//! Each checker searches one framework (or a pair of frameworks) for a
//! counterexample. Checks run over every pair of subsets when the framework
//! has at most [`EXHAUSTIVE_MAX`] arguments and over a seeded sample of
//! [`SAMPLE_PAIRS`] pairs otherwise; the report states which mode ran.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::argset::{all_subsets, ArgSet};
use crate::engine::{Ranker, SetKey};
use crate::framework::Framework;
use crate::semantics::{enumerate, SemanticsId};
use crate::spec::RankingSpec;
use crate::{Error, Limits, Result, Verdict};

/// Largest framework checked over every pair of subsets.
pub const EXHAUSTIVE_MAX: usize = 7;
/// Number of sampled pairs above [`EXHAUSTIVE_MAX`].
pub const SAMPLE_PAIRS: usize = 4096;
/// Largest number of components whose bipartitions are all tried.
pub const MAX_BIPARTITION_COMPONENTS: usize = 8;

/// The extension-ranking principles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum PrincipleId {
    Generalisation(SemanticsId),
    Soundness(SemanticsId),
    Completeness(SemanticsId),
    Composition,
    Decomposition,
    WeakReinstatement,
    StrongReinstatement,
    AdditionRobustness,
    SyntaxIndependence,
}

impl fmt::Display for PrincipleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrincipleId::Generalisation(s) => write!(f, "generalisation:{s}"),
            PrincipleId::Soundness(s) => write!(f, "soundness:{s}"),
            PrincipleId::Completeness(s) => write!(f, "completeness:{s}"),
            PrincipleId::Composition => f.write_str("composition"),
            PrincipleId::Decomposition => f.write_str("decomposition"),
            PrincipleId::WeakReinstatement => f.write_str("weak-reinstatement"),
            PrincipleId::StrongReinstatement => f.write_str("strong-reinstatement"),
            PrincipleId::AdditionRobustness => f.write_str("addition-robustness"),
            PrincipleId::SyntaxIndependence => f.write_str("syntax-independence"),
        }
    }
}

impl FromStr for PrincipleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidPrinciple(s.to_string());
        if let Some((name, sigma)) = s.split_once(':') {
            let sigma: SemanticsId = sigma.parse().map_err(|_| invalid())?;
            return match name {
                "generalisation" => Ok(PrincipleId::Generalisation(sigma)),
                "soundness" => Ok(PrincipleId::Soundness(sigma)),
                "completeness" => Ok(PrincipleId::Completeness(sigma)),
                _ => Err(invalid()),
            };
        }
        match s {
            "composition" => Ok(PrincipleId::Composition),
            "decomposition" => Ok(PrincipleId::Decomposition),
            "weak-reinstatement" => Ok(PrincipleId::WeakReinstatement),
            "strong-reinstatement" => Ok(PrincipleId::StrongReinstatement),
            "addition-robustness" => Ok(PrincipleId::AdditionRobustness),
            "syntax-independence" => Ok(PrincipleId::SyntaxIndependence),
            _ => Err(invalid()),
        }
    }
}

impl From<PrincipleId> for String {
    fn from(p: PrincipleId) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for PrincipleId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// How thoroughly a checker searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

/// Which half of generalisation a witness breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneralisationFailure {
    /// A most plausible set is not an extension.
    Unsound,
    /// An extension is not most plausible.
    Incomplete,
}

/// Whether a split check tests composition or decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitDirection {
    Composition,
    Decomposition,
}

/// A concrete counterexample. Sets are given by argument names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    Generalisation {
        framework: Framework,
        semantics: SemanticsId,
        failure: GeneralisationFailure,
        set: Vec<String>,
    },
    Split {
        framework: Framework,
        direction: SplitDirection,
        part: Vec<String>,
        left: Vec<String>,
        right: Vec<String>,
        local: [Verdict; 2],
        global: Verdict,
    },
    Reinstatement {
        framework: Framework,
        strong: bool,
        set: Vec<String>,
        argument: String,
        verdict: Verdict,
    },
    AdditionRobustness {
        framework: Framework,
        attack: (String, String),
        left: Vec<String>,
        right: Vec<String>,
        before: Verdict,
        after: Verdict,
    },
    SyntaxIndependence {
        framework: Framework,
        permutation: Vec<usize>,
        left: Vec<String>,
        right: Vec<String>,
        original: Verdict,
        permuted: Verdict,
    },
}

fn names_set(f: &Framework, names: &[String]) -> Result<ArgSet> {
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    f.set_of(&refs)
}

impl Witness {
    /// The framework the witness lives in.
    pub fn framework(&self) -> &Framework {
        match self {
            Witness::Generalisation { framework, .. }
            | Witness::Split { framework, .. }
            | Witness::Reinstatement { framework, .. }
            | Witness::AdditionRobustness { framework, .. }
            | Witness::SyntaxIndependence { framework, .. } => framework,
        }
    }

    /// Replays the witness and reports whether it still shows a violation.
    pub fn recheck(&self, spec: &RankingSpec) -> Result<bool> {
        Ok(match self {
            Witness::Generalisation {
                framework,
                semantics,
                failure,
                set,
            } => {
                let e = names_set(framework, set)?;
                let is_ext = enumerate(framework, *semantics, Limits::default().enumeration)?.contains(&e);
                let is_max = Ranker::new(framework.clone(), spec.clone())
                    .most_plausible()?
                    .contains(&e);
                match failure {
                    GeneralisationFailure::Unsound => is_max && !is_ext,
                    GeneralisationFailure::Incomplete => is_ext && !is_max,
                }
            }
            Witness::Split {
                framework,
                direction,
                part,
                left,
                right,
                ..
            } => split_instance(
                framework,
                &names_set(framework, part)?,
                spec,
                &names_set(framework, left)?,
                &names_set(framework, right)?,
                *direction,
            )?
            .is_some(),
            Witness::Reinstatement {
                framework,
                strong,
                set,
                argument,
                ..
            } => {
                let a = framework
                    .index_of(argument)
                    .ok_or_else(|| Error::UnknownArgument(argument.clone()))?;
                reinstatement_instance(framework, spec, &names_set(framework, set)?, a, *strong)?.is_some()
            }
            Witness::AdditionRobustness {
                framework,
                attack,
                left,
                right,
                ..
            } => {
                let idx = |n: &String| framework.index_of(n).ok_or_else(|| Error::UnknownArgument(n.clone()));
                addition_instance(
                    framework,
                    spec,
                    &names_set(framework, left)?,
                    &names_set(framework, right)?,
                    (idx(&attack.0)?, idx(&attack.1)?),
                )?
                .is_some()
            }
            Witness::SyntaxIndependence {
                framework,
                permutation,
                left,
                right,
                ..
            } => {
                let (e, e2) = (names_set(framework, left)?, names_set(framework, right)?);
                let g = permuted(framework, permutation)?;
                let v = Ranker::new(framework.clone(), spec.clone()).compare(&e, &e2)?;
                let w = Ranker::new(g, spec.clone()).compare(
                    &Framework::map_set(&e, permutation),
                    &Framework::map_set(&e2, permutation),
                )?;
                v != w
            }
        })
    }

    /// A one-line human-readable account of the counterexample.
    pub fn describe(&self) -> String {
        let s = |v: &[String]| format!("{{{}}}", v.join(","));
        match self {
            Witness::Generalisation {
                semantics,
                failure,
                set,
                ..
            } => match failure {
                GeneralisationFailure::Unsound => {
                    format!("{} is most plausible but not a {semantics} extension", s(set))
                }
                GeneralisationFailure::Incomplete => {
                    format!("{} is a {semantics} extension but not most plausible", s(set))
                }
            },
            Witness::Split {
                part,
                left,
                right,
                local,
                global,
                ..
            } => format!(
                "parts {} and rest: {} vs {} is {} and {} locally but {} globally",
                s(part),
                s(left),
                s(right),
                local[0],
                local[1],
                global
            ),
            Witness::Reinstatement {
                set,
                argument,
                verdict,
                ..
            } => format!("{} plus {argument} vs {} is {verdict}", s(set), s(set)),
            Witness::AdditionRobustness {
                attack,
                left,
                right,
                before,
                after,
                ..
            } => format!(
                "{} vs {} is {before}, after adding ({},{}) it is {after}",
                s(left),
                s(right),
                attack.0,
                attack.1
            ),
            Witness::SyntaxIndependence {
                left,
                right,
                original,
                permuted,
                ..
            } => format!("{} vs {} is {original}, after relabelling {permuted}", s(left), s(right)),
        }
    }
}

/// Outcome of a principle check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Outcome {
    NoViolationFound,
    Violated { witness: Box<Witness> },
}

impl Outcome {
    /// Whether a counterexample was found.
    pub fn is_violated(&self) -> bool {
        matches!(self, Outcome::Violated { .. })
    }

    /// The counterexample, if any.
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Violated { witness } => Some(witness),
            Outcome::NoViolationFound => None,
        }
    }

    fn violated(w: Witness) -> Self {
        Outcome::Violated { witness: Box::new(w) }
    }
}

/// The result of one checker run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrincipleReport {
    pub principle: PrincipleId,
    pub spec: RankingSpec,
    /// Number of sets, pairs or trials examined.
    pub sample_size: usize,
    pub mode: Mode,
    pub outcome: Outcome,
    /// Set when soundness failed only because σ has no extension at all, in
    /// which case no ranking can be sound on this framework.
    pub structurally_unsatisfiable: bool,
}

impl PrincipleReport {
    fn new(principle: PrincipleId, spec: &RankingSpec, sample_size: usize, mode: Mode, outcome: Outcome) -> Self {
        PrincipleReport {
            principle,
            spec: spec.clone(),
            sample_size,
            mode,
            outcome,
            structurally_unsatisfiable: false,
        }
    }

    fn merge(mut self, other: PrincipleReport) -> Self {
        self.sample_size += other.sample_size;
        if other.mode == Mode::Sampled {
            self.mode = Mode::Sampled;
        }
        if !self.outcome.is_violated() {
            self.outcome = other.outcome;
            self.structurally_unsatisfiable = other.structurally_unsatisfiable;
        }
        self
    }
}

/// Precomputed comparison keys for every subset of a small framework.
struct KeyTable<'a> {
    ranker: &'a Ranker,
    keys: Option<Vec<SetKey>>,
}

impl<'a> KeyTable<'a> {
    fn new(ranker: &'a Ranker, exhaustive: bool) -> Result<Self> {
        let keys = if exhaustive {
            Some(
                all_subsets(ranker.framework().len())
                    .map(|e| ranker.key(&e))
                    .collect::<Result<_>>()?,
            )
        } else {
            None
        };
        Ok(KeyTable { ranker, keys })
    }

    fn compare(&self, e: &ArgSet, e2: &ArgSet) -> Result<Verdict> {
        match (&self.keys, e.mask(), e2.mask()) {
            (Some(keys), Some(x), Some(y)) => Ok(self.ranker.compare_keys(&keys[x as usize], &keys[y as usize])?.0),
            _ => self.ranker.compare(e, e2),
        }
    }
}

fn random_set(rng: &mut ChaCha8Rng, n: usize) -> ArgSet {
    ArgSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)))
}

/// Every ordered pair of subsets, or a seeded sample for large frameworks.
fn pairs(n: usize, seed: u64) -> (Mode, Vec<(ArgSet, ArgSet)>) {
    if n <= EXHAUSTIVE_MAX {
        let sets: Vec<ArgSet> = all_subsets(n).collect();
        let all = sets
            .iter()
            .flat_map(|e| sets.iter().map(move |e2| (e.clone(), e2.clone())))
            .collect();
        (Mode::Exhaustive, all)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sample = (0..SAMPLE_PAIRS)
            .map(|_| (random_set(&mut rng, n), random_set(&mut rng, n)))
            .collect();
        (Mode::Sampled, sample)
    }
}

/// Every subset, or a seeded sample for large frameworks.
fn sets(n: usize, seed: u64) -> (Mode, Vec<ArgSet>) {
    if n <= EXHAUSTIVE_MAX {
        (Mode::Exhaustive, all_subsets(n).collect())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (Mode::Sampled, (0..SAMPLE_PAIRS).map(|_| random_set(&mut rng, n)).collect())
    }
}

/// Checks σ-soundness, σ-completeness or both.
pub fn check_generalisation(f: &Framework, spec: &RankingSpec, principle: PrincipleId) -> Result<PrincipleReport> {
    let (sigma, sound, complete) = match principle {
        PrincipleId::Generalisation(s) => (s, true, true),
        PrincipleId::Soundness(s) => (s, true, false),
        PrincipleId::Completeness(s) => (s, false, true),
        other => return Err(Error::InvalidPrinciple(other.to_string())),
    };
    let ranker = Ranker::new(f.clone(), spec.clone());
    let exts = enumerate(f, sigma, ranker.limits().enumeration)?;
    let max = ranker.most_plausible()?;
    let witness = |failure, e: &ArgSet| Witness::Generalisation {
        framework: f.clone(),
        semantics: sigma,
        failure,
        set: f.set_names(e),
    };
    let mut outcome = Outcome::NoViolationFound;
    if sound {
        if let Some(e) = max.iter().find(|e| !exts.contains(e)) {
            outcome = Outcome::violated(witness(GeneralisationFailure::Unsound, e));
        }
    }
    if complete && !outcome.is_violated() {
        if let Some(e) = exts.extensions.iter().find(|e| !max.contains(e)) {
            outcome = Outcome::violated(witness(GeneralisationFailure::Incomplete, e));
        }
    }
    let mut report = PrincipleReport::new(principle, spec, 1usize << f.len().min(62), Mode::Exhaustive, outcome);
    report.structurally_unsatisfiable = sound && exts.extensions.is_empty() && report.outcome.is_violated();
    Ok(report)
}

/// Splits `f` into the sub-frameworks induced by `part` and its complement.
///
/// Fails with [`Error::NotAPartition`] when an attack crosses the split or
/// either side is empty.
fn split(f: &Framework, part: &ArgSet) -> Result<[(Framework, Vec<usize>); 2]> {
    let rest = f.full_set().difference(part);
    if part.is_empty() || rest.is_empty() || !part.is_subset(&f.full_set()) {
        return Err(Error::NotAPartition);
    }
    if f.attacks().iter().any(|&(x, y)| part.contains(x) != part.contains(y)) {
        return Err(Error::NotAPartition);
    }
    Ok([f.restrict(part), f.restrict(&rest)])
}

fn local_set(e: &ArgSet, old: &[usize]) -> ArgSet {
    ArgSet::from_indices(old.len(), (0..old.len()).filter(|&k| e.contains(old[k])))
}

struct SplitCheck<'a> {
    f: &'a Framework,
    part: &'a ArgSet,
    parts: [(Framework, Vec<usize>); 2],
    rankers: [Ranker; 2],
    whole: Ranker,
    direction: SplitDirection,
}

impl<'a> SplitCheck<'a> {
    fn new(f: &'a Framework, part: &'a ArgSet, spec: &RankingSpec, direction: SplitDirection) -> Result<Self> {
        let parts = split(f, part)?;
        let rankers = [
            Ranker::new(parts[0].0.clone(), spec.clone()),
            Ranker::new(parts[1].0.clone(), spec.clone()),
        ];
        Ok(SplitCheck {
            f,
            part,
            rankers,
            parts,
            whole: Ranker::new(f.clone(), spec.clone()),
            direction,
        })
    }

    fn verdicts(&self, tables: &[KeyTable; 3], e: &ArgSet, e2: &ArgSet) -> Result<([Verdict; 2], Verdict)> {
        let mut local = [Verdict::Equivalent; 2];
        for k in 0..2 {
            let old = &self.parts[k].1;
            local[k] = tables[k].compare(&local_set(e, old), &local_set(e2, old))?;
        }
        Ok((local, tables[2].compare(e, e2)?))
    }

    fn violation(&self, local: [Verdict; 2], global: Verdict) -> bool {
        let locally = local.iter().all(|v| v.is_weakly_better());
        match self.direction {
            SplitDirection::Composition => locally && !global.is_weakly_better(),
            SplitDirection::Decomposition => global.is_weakly_better() && !locally,
        }
    }

    fn witness(&self, e: &ArgSet, e2: &ArgSet, local: [Verdict; 2], global: Verdict) -> Witness {
        Witness::Split {
            framework: self.f.clone(),
            direction: self.direction,
            part: self.f.set_names(self.part),
            left: self.f.set_names(e),
            right: self.f.set_names(e2),
            local,
            global,
        }
    }
}

/// Checks one pair of sets against a split of `f`; returns the witness if violated.
pub fn split_instance(
    f: &Framework,
    part: &ArgSet,
    spec: &RankingSpec,
    e: &ArgSet,
    e2: &ArgSet,
    direction: SplitDirection,
) -> Result<Option<Witness>> {
    let check = SplitCheck::new(f, part, spec, direction)?;
    let tables = [
        KeyTable::new(&check.rankers[0], false)?,
        KeyTable::new(&check.rankers[1], false)?,
        KeyTable::new(&check.whole, false)?,
    ];
    let (local, global) = check.verdicts(&tables, e, e2)?;
    Ok(check
        .violation(local, global)
        .then(|| check.witness(e, e2, local, global)))
}

/// Checks composition or decomposition for the split of `f` into `part` and
/// its complement.
pub fn check_split(
    f: &Framework,
    part: &ArgSet,
    spec: &RankingSpec,
    direction: SplitDirection,
    seed: u64,
) -> Result<PrincipleReport> {
    let principle = match direction {
        SplitDirection::Composition => PrincipleId::Composition,
        SplitDirection::Decomposition => PrincipleId::Decomposition,
    };
    let check = SplitCheck::new(f, part, spec, direction)?;
    let (mode, all) = pairs(f.len(), seed);
    let exhaustive = mode == Mode::Exhaustive;
    let tables = [
        KeyTable::new(&check.rankers[0], exhaustive)?,
        KeyTable::new(&check.rankers[1], exhaustive)?,
        KeyTable::new(&check.whole, exhaustive)?,
    ];
    for (e, e2) in &all {
        let (local, global) = check.verdicts(&tables, e, e2)?;
        if check.violation(local, global) {
            let w = check.witness(e, e2, local, global);
            return Ok(PrincipleReport::new(principle, spec, all.len(), mode, Outcome::violated(w)));
        }
    }
    Ok(PrincipleReport::new(principle, spec, all.len(), mode, Outcome::NoViolationFound))
}

/// Composition for two disjoint frameworks, checked on their union.
pub fn check_composition(f1: &Framework, f2: &Framework, spec: &RankingSpec, seed: u64) -> Result<PrincipleReport> {
    let union = f1.disjoint_union(f2)?;
    let part = ArgSet::from_indices(union.len(), 0..f1.len());
    check_split(&union, &part, spec, SplitDirection::Composition, seed)
}

/// Decomposition for a framework split into `part` and its complement.
pub fn check_decomposition(f: &Framework, part: &ArgSet, spec: &RankingSpec, seed: u64) -> Result<PrincipleReport> {
    check_split(f, part, spec, SplitDirection::Decomposition, seed)
}

/// The bipartitions of `f` into unions of components.
///
/// All of them are listed when there are at most
/// [`MAX_BIPARTITION_COMPONENTS`] components; otherwise each component is
/// split from the rest.
pub fn component_bipartitions(f: &Framework) -> Vec<ArgSet> {
    let comps = f.components();
    let k = comps.len();
    if k < 2 {
        return Vec::new();
    }
    if k > MAX_BIPARTITION_COMPONENTS {
        return comps;
    }
    // The last component always stays on the right, so each bipartition is
    // listed once.
    (1u64..1 << (k - 1))
        .map(|mask| {
            let mut part = f.empty_set();
            for (i, c) in comps.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    part.union_with(c);
                }
            }
            part
        })
        .collect()
}

fn check_all_splits(f: &Framework, spec: &RankingSpec, direction: SplitDirection, seed: u64) -> Result<PrincipleReport> {
    let principle = match direction {
        SplitDirection::Composition => PrincipleId::Composition,
        SplitDirection::Decomposition => PrincipleId::Decomposition,
    };
    let mut report = PrincipleReport::new(principle, spec, 0, Mode::Exhaustive, Outcome::NoViolationFound);
    for part in component_bipartitions(f) {
        report = report.merge(check_split(f, &part, spec, direction, seed)?);
        if report.outcome.is_violated() {
            break;
        }
    }
    Ok(report)
}

fn reinstatement_applies(f: &Framework, e: &ArgSet, a: usize) -> bool {
    !e.contains(a) && f.defends(e, a) && !f.minus(e).contains(a) && !f.plus(e).contains(a)
}

fn reinstatement_violated(v: Verdict, strong: bool) -> bool {
    if strong {
        v != Verdict::Better
    } else {
        !v.is_weakly_better()
    }
}

/// Checks reinstatement for one set and one argument.
///
/// Fails with [`Error::InvalidPrinciple`] when `a` does not meet the
/// principle's side conditions for `e`.
pub fn reinstatement_instance(
    f: &Framework,
    spec: &RankingSpec,
    e: &ArgSet,
    a: usize,
    strong: bool,
) -> Result<Option<Witness>> {
    if !reinstatement_applies(f, e, a) {
        return Err(Error::InvalidPrinciple(format!(
            "{} is not reinstated by {}",
            f.name(a),
            f.format_set(e)
        )));
    }
    let v = Ranker::new(f.clone(), spec.clone()).compare(&e.with(a), e)?;
    Ok(reinstatement_violated(v, strong).then(|| Witness::Reinstatement {
        framework: f.clone(),
        strong,
        set: f.set_names(e),
        argument: f.name(a).to_string(),
        verdict: v,
    }))
}

/// Checks weak or strong reinstatement.
pub fn check_reinstatement(f: &Framework, spec: &RankingSpec, strong: bool, seed: u64) -> Result<PrincipleReport> {
    let principle = if strong {
        PrincipleId::StrongReinstatement
    } else {
        PrincipleId::WeakReinstatement
    };
    let ranker = Ranker::new(f.clone(), spec.clone());
    let (mode, candidates) = sets(f.len(), seed);
    let table = KeyTable::new(&ranker, mode == Mode::Exhaustive)?;
    let mut checked = 0;
    for e in &candidates {
        for a in 0..f.len() {
            if !reinstatement_applies(f, e, a) {
                continue;
            }
            checked += 1;
            let v = table.compare(&e.with(a), e)?;
            if reinstatement_violated(v, strong) {
                let w = Witness::Reinstatement {
                    framework: f.clone(),
                    strong,
                    set: f.set_names(e),
                    argument: f.name(a).to_string(),
                    verdict: v,
                };
                return Ok(PrincipleReport::new(principle, spec, checked, mode, Outcome::violated(w)));
            }
        }
    }
    Ok(PrincipleReport::new(principle, spec, checked, mode, Outcome::NoViolationFound))
}

fn addition_applies(f: &Framework, e: &ArgSet, e2: &ArgSet, (a, b): (usize, usize)) -> bool {
    e.contains(a) && e2.contains(b) && !e.contains(b) && !f.attacks_pair(a, b)
}

/// Checks addition robustness for one pair and one new attack `(a, b)`.
///
/// Fails with [`Error::InvalidPrinciple`] when the attack is not eligible or
/// `e` is not at least as plausible as `e2` before the addition.
pub fn addition_instance(
    f: &Framework,
    spec: &RankingSpec,
    e: &ArgSet,
    e2: &ArgSet,
    attack: (usize, usize),
) -> Result<Option<Witness>> {
    let (a, b) = attack;
    let before = Ranker::new(f.clone(), spec.clone()).compare(e, e2)?;
    if !addition_applies(f, e, e2, attack) || !before.is_weakly_better() {
        return Err(Error::InvalidPrinciple(format!(
            "adding ({},{}) to {} vs {} is not an instance",
            f.name(a),
            f.name(b),
            f.format_set(e),
            f.format_set(e2)
        )));
    }
    let after = Ranker::new(f.with_attack(a, b), spec.clone()).compare(e, e2)?;
    Ok((!after.is_weakly_better()).then(|| Witness::AdditionRobustness {
        framework: f.clone(),
        attack: (f.name(a).to_string(), f.name(b).to_string()),
        left: f.set_names(e),
        right: f.set_names(e2),
        before,
        after,
    }))
}

/// Checks addition robustness over every eligible new attack.
pub fn check_addition_robustness(f: &Framework, spec: &RankingSpec, seed: u64) -> Result<PrincipleReport> {
    let principle = PrincipleId::AdditionRobustness;
    let ranker = Ranker::new(f.clone(), spec.clone());
    let (mode, all) = pairs(f.len(), seed);
    let exhaustive = mode == Mode::Exhaustive;
    let table = KeyTable::new(&ranker, exhaustive)?;
    let n = f.len();
    let mut checked = 0;
    for a in 0..n {
        for b in 0..n {
            if a == b || f.attacks_pair(a, b) {
                continue;
            }
            let g = Ranker::new(f.with_attack(a, b), spec.clone());
            let mut modified: Option<KeyTable> = None;
            for (e, e2) in &all {
                if !addition_applies(f, e, e2, (a, b)) {
                    continue;
                }
                let before = table.compare(e, e2)?;
                if !before.is_weakly_better() {
                    continue;
                }
                checked += 1;
                if modified.is_none() {
                    modified = Some(KeyTable::new(&g, exhaustive)?);
                }
                let after = modified.as_ref().expect("initialised above").compare(e, e2)?;
                if !after.is_weakly_better() {
                    let w = Witness::AdditionRobustness {
                        framework: f.clone(),
                        attack: (f.name(a).to_string(), f.name(b).to_string()),
                        left: f.set_names(e),
                        right: f.set_names(e2),
                        before,
                        after,
                    };
                    return Ok(PrincipleReport::new(principle, spec, checked, mode, Outcome::violated(w)));
                }
            }
        }
    }
    Ok(PrincipleReport::new(principle, spec, checked, mode, Outcome::NoViolationFound))
}

/// The copy of `f` in which argument `i` sits at index `perm[i]`.
pub fn permuted(f: &Framework, perm: &[usize]) -> Result<Framework> {
    let mut names = vec![String::new(); f.len()];
    for (i, &p) in perm.iter().enumerate() {
        if p < names.len() {
            names[p] = f.name(i).to_string();
        }
    }
    f.relabel(perm, names)
}

/// A seeded random permutation of `0..n`.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}

/// Checks that verdicts survive moving argument `i` to index `perm[i]`.
pub fn check_syntax_independence(f: &Framework, spec: &RankingSpec, perm: &[usize], seed: u64) -> Result<PrincipleReport> {
    let principle = PrincipleId::SyntaxIndependence;
    let g = permuted(f, perm)?;
    let (r, s) = (Ranker::new(f.clone(), spec.clone()), Ranker::new(g, spec.clone()));
    let (mode, all) = pairs(f.len(), seed);
    let exhaustive = mode == Mode::Exhaustive;
    let (t, u) = (KeyTable::new(&r, exhaustive)?, KeyTable::new(&s, exhaustive)?);
    for (e, e2) in &all {
        let original = t.compare(e, e2)?;
        let moved = u.compare(&Framework::map_set(e, perm), &Framework::map_set(e2, perm))?;
        if original != moved {
            let w = Witness::SyntaxIndependence {
                framework: f.clone(),
                permutation: perm.to_vec(),
                left: f.set_names(e),
                right: f.set_names(e2),
                original,
                permuted: moved,
            };
            return Ok(PrincipleReport::new(principle, spec, all.len(), mode, Outcome::violated(w)));
        }
    }
    Ok(PrincipleReport::new(principle, spec, all.len(), mode, Outcome::NoViolationFound))
}

/// Runs the checker for `principle` on one framework.
///
/// Composition and decomposition are tested over the bipartitions of the
/// framework's components; syntax independence uses a permutation drawn from
/// `seed`.
pub fn check(f: &Framework, spec: &RankingSpec, principle: PrincipleId, seed: u64) -> Result<PrincipleReport> {
    match principle {
        PrincipleId::Generalisation(_) | PrincipleId::Soundness(_) | PrincipleId::Completeness(_) => {
            check_generalisation(f, spec, principle)
        }
        PrincipleId::Composition => check_all_splits(f, spec, SplitDirection::Composition, seed),
        PrincipleId::Decomposition => check_all_splits(f, spec, SplitDirection::Decomposition, seed),
        PrincipleId::WeakReinstatement => check_reinstatement(f, spec, false, seed),
        PrincipleId::StrongReinstatement => check_reinstatement(f, spec, true, seed),
        PrincipleId::AdditionRobustness => check_addition_robustness(f, spec, seed),
        PrincipleId::SyntaxIndependence => {
            check_syntax_independence(f, spec, &random_permutation(f.len(), seed), seed)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn spec(s: &str) -> RankingSpec {
        s.parse().unwrap()
    }

    fn violated(r: &PrincipleReport) -> String {
        r.outcome.witness().map(Witness::describe).unwrap_or_default()
    }

    #[test]
    fn principle_names_round_trip() {
        for p in [
            "generalisation:co",
            "soundness:st",
            "completeness:pr",
            "composition",
            "decomposition",
            "weak-reinstatement",
            "strong-reinstatement",
            "addition-robustness",
            "syntax-independence",
        ] {
            assert_eq!(p.parse::<PrincipleId>().unwrap().to_string(), p);
        }
        assert!("generalisation:zz".parse::<PrincipleId>().is_err());
        assert!("nothing".parse::<PrincipleId>().is_err());
    }

    #[test]
    fn ld_ad_is_not_co_sound_on_f4() {
        let f = fixtures::f4();
        let r = check_generalisation(&f, &spec("ld-ad"), PrincipleId::Soundness(SemanticsId::Co)).unwrap();
        assert!(r.outcome.is_violated());
        let w = r.outcome.witness().unwrap();
        assert!(w.recheck(&spec("ld-ad")).unwrap());
    }

    #[test]
    fn r_sst_generalises_sst_on_f4() {
        let f = fixtures::f4();
        let r = check_generalisation(&f, &spec("r-sst"), PrincipleId::Generalisation(SemanticsId::Sst)).unwrap();
        assert_eq!(r.outcome, Outcome::NoViolationFound);
    }

    #[test]
    fn empty_framework_generalises_everything() {
        let f = Framework::from_letters(0, &[]);
        for s in ["r-ad", "ld-st", "gc:cat"] {
            let r = check_generalisation(&f, &spec(s), PrincipleId::Generalisation(SemanticsId::Co)).unwrap();
            assert_eq!(r.outcome, Outcome::NoViolationFound, "{s}");
        }
    }

    #[test]
    fn odd_cycle_flags_stable_soundness_as_unsatisfiable() {
        let r = check_generalisation(&fixtures::f6(), &spec("ld-st"), PrincipleId::Generalisation(SemanticsId::St)).unwrap();
        assert!(r.outcome.is_violated());
        assert!(r.structurally_unsatisfiable);
    }

    #[test]
    fn ld_cf_decomposition_fails_on_f7() {
        let f = fixtures::f7();
        let part = f.parse_set("a,b").unwrap();
        let w = split_instance(
            &f,
            &part,
            &spec("ld-cf"),
            &f.parse_set("a,b,c").unwrap(),
            &f.parse_set("a,c,d").unwrap(),
            SplitDirection::Decomposition,
        )
        .unwrap();
        assert!(w.is_some());
        assert!(check_decomposition(&f, &part, &spec("ld-cf"), 0).unwrap().outcome.is_violated());
    }

    #[test]
    fn r_ad_composes_f4_with_f5() {
        let r = check_composition(&fixtures::f4(), &fixtures::f5(), &spec("r-ad"), 0).unwrap();
        assert_eq!(r.outcome, Outcome::NoViolationFound, "{}", violated(&r));
        assert_eq!(r.mode, Mode::Sampled);
    }

    #[test]
    fn splitting_requires_unconnected_parts() {
        let f = fixtures::f5();
        assert_eq!(
            check_decomposition(&f, &f.parse_set("h").unwrap(), &spec("r-ad"), 0).unwrap_err(),
            Error::NotAPartition
        );
        assert!(matches!(
            check_composition(&fixtures::f5(), &fixtures::f5(), &spec("r-ad"), 0),
            Err(Error::NotDisjoint(_))
        ));
    }

    #[test]
    fn reinstatement_on_f5() {
        let f = fixtures::f5();
        let r = check_reinstatement(&f, &spec("r-ad"), true, 0).unwrap();
        let Some(Witness::Reinstatement { set, argument, .. }) = r.outcome.witness() else {
            panic!("expected a reinstatement witness");
        };
        // The empty set reinstating `h` is enumerated before `{h}` reinstating `j`.
        assert_eq!((set.as_slice(), argument.as_str()), (&[][..], "h"));
        let h = f.parse_set("h").unwrap();
        let w = reinstatement_instance(&f, &spec("r-ad"), &h, 2, true).unwrap().unwrap();
        assert!(w.recheck(&spec("r-ad")).unwrap());
        assert!(!check_reinstatement(&f, &spec("r-co"), true, 0).unwrap().outcome.is_violated());
        assert!(!check_reinstatement(&f, &spec("gc:cat"), false, 0).unwrap().outcome.is_violated());
        assert!(reinstatement_instance(&f, &spec("cope:ncount-cat"), &h, 2, false).unwrap().is_some());
    }

    #[test]
    fn addition_robustness_examples() {
        let f = fixtures::f12();
        let (a, b) = (0, 1);
        let w = addition_instance(&f, &spec("r-co"), &f.parse_set("a").unwrap(), &f.parse_set("b,c").unwrap(), (a, b))
            .unwrap()
            .expect("violated");
        assert!(w.recheck(&spec("r-co")).unwrap());
        assert!(check_addition_robustness(&fixtures::f9(), &spec("ld-pr"), 0).unwrap().outcome.is_violated());
        assert!(!check_addition_robustness(&fixtures::f4(), &spec("r-ad"), 0).unwrap().outcome.is_violated());
    }

    #[test]
    fn syntax_independence_holds_for_identity_and_random_permutations() {
        let f = fixtures::f4();
        let id: Vec<usize> = (0..f.len()).collect();
        for s in ["r-sst", "obe:cat:sum"] {
            assert!(!check_syntax_independence(&f, &spec(s), &id, 0).unwrap().outcome.is_violated());
            assert!(!check_syntax_independence(&f, &spec(s), &random_permutation(7, 5), 0)
                .unwrap()
                .outcome
                .is_violated());
        }
    }

    #[test]
    fn report_serialises() {
        let r = check_reinstatement(&fixtures::f5(), &spec("r-ad"), true, 0).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<PrincipleReport>(&json).unwrap(), r);
    }
}

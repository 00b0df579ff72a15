//! Pairwise comparison, materialisation and maximal sets for every
//! [`RankingSpec`].

use std::cmp::Ordering;
use std::sync::OnceLock;

use crate::argset::{all_subsets, ArgSet};
use crate::framework::Framework;
use crate::gradual::{sv, GradualCache, GradualId, EQ_TOLERANCE};
use crate::relations::{compare_base_cached, relation_value, BaseRelation, RelationValue};
use crate::semantics::{FamilyCache, SemanticsId};
use crate::spec::{Aggregator, EvalSource, RankingSpec};
use crate::{Error, Limits, Result, Verdict};

/// A per-set summary from which two sets can be compared quickly.
#[derive(Debug, Clone, PartialEq)]
pub enum SetKey {
    /// Membership in the extension family (least-discriminating rankings).
    Member(bool),
    /// The set with one value per lexicographic stage; `None` marks a
    /// pairwise stage evaluated from the sets themselves.
    Stages(ArgSet, Vec<Option<RelationValue>>),
    /// Copeland balance.
    Balance(i64),
    /// The set itself (group comparison).
    Set(ArgSet),
    /// An aggregated scalar.
    Scalar(f64),
    /// A sorted value sequence (leximax descending, leximin ascending).
    Sequence(Vec<f64>),
}

fn compare_scalars(x: f64, y: f64) -> Ordering {
    if x == y || (x - y).abs() <= EQ_TOLERANCE {
        Ordering::Equal
    } else if x > y {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn from_ordering(o: Ordering) -> Verdict {
    match o {
        Ordering::Greater => Verdict::Better,
        Ordering::Less => Verdict::Worse,
        Ordering::Equal => Verdict::Equivalent,
    }
}

fn compare_sequences(x: &[f64], y: &[f64], pad: f64) -> Ordering {
    let len = x.len().max(y.len());
    (0..len)
        .map(|i| {
            compare_scalars(
                x.get(i).copied().unwrap_or(pad),
                y.get(i).copied().unwrap_or(pad),
            )
        })
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

/// Aggregates a value sequence into a comparable key.
///
/// The maximum of an empty sequence is `-inf` and its minimum is `+inf`, the
/// identities of the two operations.
pub fn aggregate(agg: Aggregator, mut values: Vec<f64>) -> SetKey {
    match agg {
        Aggregator::Sum => SetKey::Scalar(values.iter().sum()),
        Aggregator::Max => SetKey::Scalar(values.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
        Aggregator::Min => SetKey::Scalar(values.iter().copied().fold(f64::INFINITY, f64::min)),
        Aggregator::Leximax => {
            values.sort_by(|a, b| b.total_cmp(a));
            SetKey::Sequence(values)
        }
        Aggregator::Leximin => {
            values.sort_by(|a, b| a.total_cmp(b));
            SetKey::Sequence(values)
        }
    }
}

/// Evaluates one ranking spec on one framework, caching shared artefacts.
#[derive(Debug)]
pub struct Ranker {
    framework: Framework,
    spec: RankingSpec,
    limits: Limits,
    families: FamilyCache,
    gradual: GradualCache,
    source_values: OnceLock<Result<Vec<f64>>>,
    balances: OnceLock<Result<Vec<i64>>>,
}

impl Ranker {
    /// A ranker with default limits.
    pub fn new(framework: Framework, spec: RankingSpec) -> Self {
        Self::with_limits(framework, spec, Limits::default())
    }

    /// A ranker with explicit resource limits.
    pub fn with_limits(framework: Framework, spec: RankingSpec, limits: Limits) -> Self {
        Ranker {
            framework,
            spec,
            limits,
            families: FamilyCache::default(),
            gradual: GradualCache::default(),
            source_values: OnceLock::new(),
            balances: OnceLock::new(),
        }
    }

    /// The framework being ranked.
    pub fn framework(&self) -> &Framework {
        &self.framework
    }

    /// The spec being evaluated.
    pub fn spec(&self) -> &RankingSpec {
        &self.spec
    }

    /// The limits in force.
    pub fn limits(&self) -> Limits {
        self.limits
    }

    fn check_set(&self, e: &ArgSet) -> Result<()> {
        if e.iter().any(|i| i >= self.framework.len()) {
            return Err(Error::FrameworkMismatch);
        }
        Ok(())
    }

    fn stage_value(&self, rel: BaseRelation, e: &ArgSet) -> Result<Option<RelationValue>> {
        if rel.is_unary() {
            relation_value(&self.framework, rel, e).map(Some)
        } else {
            Ok(None)
        }
    }

    fn stage_verdict(
        &self,
        rel: BaseRelation,
        e: &ArgSet,
        ve: &Option<RelationValue>,
        e2: &ArgSet,
        ve2: &Option<RelationValue>,
    ) -> Result<Verdict> {
        match (ve, ve2) {
            (Some(x), Some(y)) => Ok(x.compare(y)),
            _ => compare_base_cached(&self.framework, rel, e, e2, &self.gradual),
        }
    }

    /// Per-argument values of an order-based evaluation source.
    pub fn source_values(&self) -> Result<&[f64]> {
        self.source_values
            .get_or_init(|| self.obe_source().and_then(|src| self.compute_source_values(src)))
            .as_deref()
            .map_err(Clone::clone)
    }

    fn obe_source(&self) -> Result<EvalSource> {
        match self.spec {
            RankingSpec::Obe(src, _) => Ok(src),
            _ => Err(Error::InvalidSpec(self.spec.to_string())),
        }
    }

    fn compute_source_values(&self, src: EvalSource) -> Result<Vec<f64>> {
        let f = &self.framework;
        Ok(match src {
            EvalSource::Ne(sigma) => {
                let fam = self.families.get(f, sigma, self.limits.enumeration)?;
                (0..f.len()).map(|a| fam.count_containing(a) as f64).collect()
            }
            EvalSource::Cat => self.gradual.cat(f)?.to_vec(),
            EvalSource::BbsSv | EvalSource::CatSv => {
                let id = if src == EvalSource::BbsSv {
                    GradualId::Bbs
                } else {
                    GradualId::Cat
                };
                let positions = sv(self.gradual.ranking(f, id)?);
                // Rank positions count down from the strongest argument, so
                // they are flipped to make larger values better.
                let top = positions.iter().copied().max().unwrap_or(0);
                positions.iter().map(|&p| (top - p) as f64).collect()
            }
        })
    }

    /// The value sequence of `e` under the spec's evaluation source.
    pub fn obe_sequence(&self, e: &ArgSet) -> Result<Vec<f64>> {
        self.check_set(e)?;
        let values = self.source_values()?;
        Ok(e.iter().map(|a| values[a]).collect())
    }

    fn cope_balances(&self) -> Result<&[i64]> {
        self.balances
            .get_or_init(|| self.compute_balances())
            .as_deref()
            .map_err(Clone::clone)
    }

    fn compute_balances(&self) -> Result<Vec<i64>> {
        let n = self.framework.len();
        if n > self.limits.cope || n >= 63 {
            return Err(Error::TooLargeForCope {
                n,
                cap: self.limits.cope,
            });
        }
        let sets: Vec<ArgSet> = all_subsets(n).collect();
        let mut balance = vec![0i64; sets.len()];
        for &rel in self.spec.relations() {
            let values = sets
                .iter()
                .map(|e| self.stage_value(rel, e))
                .collect::<Result<Vec<_>>>()?;
            for i in 0..sets.len() {
                for j in i + 1..sets.len() {
                    match self.stage_verdict(rel, &sets[i], &values[i], &sets[j], &values[j])? {
                        Verdict::Better => {
                            balance[i] += 1;
                            balance[j] -= 1;
                        }
                        Verdict::Worse => {
                            balance[i] -= 1;
                            balance[j] += 1;
                        }
                        Verdict::Equivalent | Verdict::Incomparable => {}
                    }
                }
            }
        }
        Ok(balance)
    }

    /// The Copeland balance of `e`: wins minus losses against every subset,
    /// summed over the combined relations.
    pub fn balance(&self, e: &ArgSet) -> Result<i64> {
        self.check_set(e)?;
        if !matches!(self.spec, RankingSpec::Cope(_)) {
            return Err(Error::InvalidSpec(self.spec.to_string()));
        }
        let mask = e.mask().ok_or(Error::FrameworkMismatch)?;
        Ok(self.cope_balances()?[mask as usize])
    }

    /// The comparison key of `e`.
    pub fn key(&self, e: &ArgSet) -> Result<SetKey> {
        self.check_set(e)?;
        Ok(match &self.spec {
            RankingSpec::Ld(sigma) => SetKey::Member(if *sigma == SemanticsId::Cf {
                self.framework.is_conflict_free(e)
            } else {
                self.families
                    .get(&self.framework, *sigma, self.limits.enumeration)?
                    .contains(e)
            }),
            RankingSpec::Lex(rels) => SetKey::Stages(
                e.clone(),
                rels.iter()
                    .map(|&r| self.stage_value(r, e))
                    .collect::<Result<_>>()?,
            ),
            RankingSpec::Cope(_) => SetKey::Balance(self.balance(e)?),
            RankingSpec::Gc(_) => SetKey::Set(e.clone()),
            RankingSpec::Obe(_, agg) => aggregate(*agg, self.obe_sequence(e)?),
        })
    }

    /// Compares two keys, reporting the deciding relation for lexicographic specs.
    pub fn compare_keys(&self, k: &SetKey, k2: &SetKey) -> Result<(Verdict, Option<BaseRelation>)> {
        let verdict = match (k, k2) {
            (SetKey::Member(x), SetKey::Member(y)) => Verdict::from_weak(*x || !*y, *y || !*x),
            (SetKey::Stages(e, v), SetKey::Stages(e2, v2)) => {
                for (i, &rel) in self.spec.relations().iter().enumerate() {
                    match self.stage_verdict(rel, e, &v[i], e2, &v2[i])? {
                        Verdict::Equivalent => continue,
                        decided => return Ok((decided, Some(rel))),
                    }
                }
                Verdict::Equivalent
            }
            (SetKey::Balance(x), SetKey::Balance(y)) => from_ordering(x.cmp(y)),
            (SetKey::Set(e), SetKey::Set(e2)) => {
                let RankingSpec::Gc(id) = self.spec else {
                    return Err(Error::InvalidSpec(self.spec.to_string()));
                };
                let r = self.gradual.ranking(&self.framework, id)?;
                let covers = |x: &ArgSet, y: &ArgSet| y.iter().all(|a| x.iter().any(|b| r.weakly_above(b, a)));
                Verdict::from_weak(covers(e, e2), covers(e2, e))
            }
            (SetKey::Scalar(x), SetKey::Scalar(y)) => from_ordering(compare_scalars(*x, *y)),
            (SetKey::Sequence(x), SetKey::Sequence(y)) => {
                let pad = match self.spec {
                    RankingSpec::Obe(_, Aggregator::Leximin) => f64::INFINITY,
                    _ => f64::NEG_INFINITY,
                };
                from_ordering(compare_sequences(x, y, pad))
            }
            _ => return Err(Error::FrameworkMismatch),
        };
        Ok((verdict, None))
    }

    /// Compares `e` against `e2`.
    pub fn compare(&self, e: &ArgSet, e2: &ArgSet) -> Result<Verdict> {
        Ok(self.explain(e, e2)?.0)
    }

    /// Compares `e` against `e2` and names the deciding base relation, if any.
    pub fn explain(&self, e: &ArgSet, e2: &ArgSet) -> Result<(Verdict, Option<BaseRelation>)> {
        self.compare_keys(&self.key(e)?, &self.key(e2)?)
    }

    fn all_sets(&self) -> Result<Vec<ArgSet>> {
        let n = self.framework.len();
        if n > self.limits.materialize {
            return Err(Error::TooLarge {
                n,
                cap: self.limits.materialize,
            });
        }
        Ok(all_subsets(n).collect())
    }

    /// The most plausible subsets: those with no strictly better subset.
    pub fn most_plausible(&self) -> Result<Vec<ArgSet>> {
        let sets = self.all_sets()?;
        let keys = sets.iter().map(|e| self.key(e)).collect::<Result<Vec<_>>>()?;
        let mut beaten = vec![false; sets.len()];
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                match self.compare_keys(&keys[i], &keys[j])?.0 {
                    Verdict::Better => beaten[j] = true,
                    Verdict::Worse => beaten[i] = true,
                    _ => {}
                }
            }
        }
        let mut out: Vec<ArgSet> = sets
            .into_iter()
            .zip(beaten)
            .filter(|(_, b)| !b)
            .map(|(e, _)| e)
            .collect();
        out.sort();
        Ok(out)
    }

    /// Materialises the ranking over `candidates`, or over every subset.
    pub fn materialize(&self, candidates: Option<Vec<ArgSet>>) -> Result<MaterializedRanking> {
        let complete = candidates.is_none();
        let mut sets = match candidates {
            Some(c) => c,
            None => self.all_sets()?,
        };
        sets.sort();
        sets.dedup();
        let keys = sets.iter().map(|e| self.key(e)).collect::<Result<Vec<_>>>()?;
        let m = sets.len();
        let mut better: Vec<ArgSet> = vec![ArgSet::empty(m); m];
        let mut uf: Vec<usize> = (0..m).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for i in 0..m {
            for j in i + 1..m {
                match self.compare_keys(&keys[i], &keys[j])?.0 {
                    Verdict::Better => better[j].insert(i),
                    Verdict::Worse => better[i].insert(j),
                    Verdict::Equivalent => {
                        let (a, b) = (find(&mut uf, i), find(&mut uf, j));
                        uf[a.max(b)] = a.min(b);
                    }
                    Verdict::Incomparable => {}
                }
            }
        }
        let maximal: Vec<usize> = (0..m).filter(|&i| better[i].is_empty()).collect();
        let roots: Vec<usize> = (0..m).map(|i| find(&mut uf, i)).collect();
        MaterializedRanking::build(self, sets, roots, better, maximal, complete)
    }
}

/// A ranking materialised over a list of sets.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterializedRanking {
    /// The ranked framework.
    pub framework: Framework,
    /// The spec that produced the ranking.
    pub spec: RankingSpec,
    /// Equivalence classes, best first; each lists its sets canonically.
    pub classes: Vec<Vec<ArgSet>>,
    /// Transitively reduced strict edges `(worse, better)` between classes.
    pub edges: Vec<(usize, usize)>,
    /// Deciding base relation per edge, for lexicographic specs.
    pub provenance: Vec<Option<BaseRelation>>,
    /// Classes holding a most plausible set.
    pub maximal: Vec<usize>,
    /// The most plausible sets.
    pub most_plausible: Vec<ArgSet>,
    /// Whether every subset was covered.
    pub complete: bool,
}

impl MaterializedRanking {
    fn build(
        ranker: &Ranker,
        sets: Vec<ArgSet>,
        roots: Vec<usize>,
        better: Vec<ArgSet>,
        maximal_sets: Vec<usize>,
        complete: bool,
    ) -> Result<Self> {
        let m = sets.len();
        let mut class_ids: Vec<usize> = roots.clone();
        class_ids.sort();
        class_ids.dedup();
        let class_of = |i: usize| class_ids.binary_search(&roots[i]).expect("root is a class");
        let k = class_ids.len();
        let mut above: Vec<ArgSet> = vec![ArgSet::empty(k); k];
        for (j, b) in better.iter().enumerate() {
            for i in b.iter() {
                let (ci, cj) = (class_of(i), class_of(j));
                if ci != cj {
                    above[cj].insert(ci);
                }
            }
        }
        // Close the class relation before reducing it, so that a chain
        // through an intermediate class suppresses the shortcut edge.
        let depth = {
            let mut memo = vec![None; k];
            fn visit(c: usize, above: &[ArgSet], memo: &mut Vec<Option<usize>>, stack: &mut Vec<bool>) -> usize {
                if let Some(d) = memo[c] {
                    return d;
                }
                if stack[c] {
                    return 0;
                }
                stack[c] = true;
                let d = above[c].iter().map(|p| visit(p, above, memo, stack) + 1).max().unwrap_or(0);
                stack[c] = false;
                memo[c] = Some(d);
                d
            }
            let mut stack = vec![false; k];
            (0..k).map(|c| visit(c, &above, &mut memo, &mut stack)).collect::<Vec<_>>()
        };
        let mut order: Vec<usize> = (0..k).collect();
        let first_member: Vec<ArgSet> = {
            let mut firsts = vec![None::<ArgSet>; k];
            for (i, e) in sets.iter().enumerate() {
                let c = class_of(i);
                if firsts[c].as_ref().is_none_or(|f| e < f) {
                    firsts[c] = Some(e.clone());
                }
            }
            firsts.into_iter().map(|f| f.expect("class is non-empty")).collect()
        };
        order.sort_by(|&x, &y| depth[x].cmp(&depth[y]).then_with(|| first_member[x].cmp(&first_member[y])));
        let mut rank_of = vec![0; k];
        for (pos, &c) in order.iter().enumerate() {
            rank_of[c] = pos;
        }
        let mut classes: Vec<Vec<ArgSet>> = vec![Vec::new(); k];
        for (i, e) in sets.iter().enumerate() {
            classes[rank_of[class_of(i)]].push(e.clone());
        }
        for c in &mut classes {
            c.sort();
        }
        let above: Vec<ArgSet> = order
            .iter()
            .map(|&c| ArgSet::from_indices(k, above[c].iter().map(|p| rank_of[p])))
            .collect();
        let mut closure = above.clone();
        for c in 0..k {
            // Classes are in depth order, so every class strictly above `c`
            // has a smaller index and its closure is final.
            let mut acc = closure[c].clone();
            for p in closure[c].iter().collect::<Vec<_>>() {
                if p < c {
                    acc.union_with(&closure[p]);
                }
            }
            closure[c] = acc;
        }
        let mut edges = Vec::new();
        let mut provenance = Vec::new();
        for c in 0..k {
            let mut implied = ArgSet::empty(k);
            for p in closure[c].iter() {
                if p != c {
                    implied.union_with(&closure[p]);
                }
            }
            for p in above[c].difference(&implied).iter() {
                if p == c {
                    continue;
                }
                edges.push((c, p));
                let (v, rel) = ranker.explain(&classes[p][0], &classes[c][0])?;
                provenance.push(if v == Verdict::Better { rel } else { None });
            }
        }
        let mut most_plausible: Vec<ArgSet> = maximal_sets.iter().map(|&i| sets[i].clone()).collect();
        most_plausible.sort();
        let mut maximal: Vec<usize> = maximal_sets.iter().map(|&i| rank_of[class_of(i)]).collect();
        maximal.sort();
        maximal.dedup();
        debug_assert!(m == classes.iter().map(Vec::len).sum::<usize>());
        Ok(MaterializedRanking {
            framework: ranker.framework.clone(),
            spec: ranker.spec.clone(),
            classes,
            edges,
            provenance,
            maximal,
            most_plausible,
            complete,
        })
    }

    /// Index of the class containing `e`.
    pub fn class_of(&self, e: &ArgSet) -> Option<usize> {
        self.classes.iter().position(|c| c.binary_search(e).is_ok())
    }

    /// Renders each class on one line, best first, with its members.
    pub fn describe(&self) -> Vec<String> {
        self.classes
            .iter()
            .map(|c| {
                c.iter()
                    .map(|e| self.framework.format_set(e))
                    .collect::<Vec<_>>()
                    .join(" ≡ ")
            })
            .collect()
    }
}

/// Compares two sets under a spec on a fresh ranker.
pub fn compare(f: &Framework, spec: &RankingSpec, e: &ArgSet, e2: &ArgSet) -> Result<Verdict> {
    Ranker::new(f.clone(), spec.clone()).compare(e, e2)
}

/// The most plausible sets of a spec on a fresh ranker.
pub fn most_plausible(f: &Framework, spec: &RankingSpec) -> Result<Vec<ArgSet>> {
    Ranker::new(f.clone(), spec.clone()).most_plausible()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn spec(s: &str) -> RankingSpec {
        s.parse().unwrap()
    }

    fn cmp(f: &Framework, s: &str, x: &str, y: &str) -> Verdict {
        compare(f, &spec(s), &f.parse_set(x).unwrap(), &f.parse_set(y).unwrap()).unwrap()
    }

    #[test]
    fn lexicographic_examples_on_f4() {
        let f = fixtures::f4();
        assert_eq!(cmp(&f, "r-ad", "b", "b,f"), Verdict::Better);
        assert_eq!(cmp(&f, "r-ad", "b,f", "a,b"), Verdict::Better);
        assert_eq!(cmp(&f, "r-ad", "b,g", "a,f"), Verdict::Incomparable);
        assert_eq!(cmp(&f, "r-co", "g", "d"), Verdict::Better);
        assert_eq!(cmp(&f, "r-gr", "a,g", "a,c,g"), Verdict::Better);
        assert_eq!(cmp(&f, "r-pr", "d", "{}"), Verdict::Better);
        assert_eq!(cmp(&f, "r-co-pr", "d", "{}"), Verdict::Worse);
        assert_eq!(cmp(&f, "r-sst", "a,c,g", "a,d,g"), Verdict::Better);
    }

    #[test]
    fn copeland_balances_on_f5() {
        let f = fixtures::f5();
        let r = Ranker::new(f.clone(), spec("cope:conflicts,ud"));
        assert_eq!(r.balance(&f.parse_set("h,i").unwrap()).unwrap(), -6);
        assert_eq!(r.balance(&f.parse_set("i").unwrap()).unwrap(), 1);
        assert_eq!(cmp(&f, "cope:conflicts,ud", "i", "h,i"), Verdict::Better);
    }

    #[test]
    fn order_based_and_group_examples_on_f4() {
        let f = fixtures::f4();
        assert_eq!(cmp(&f, "obe:ne-co:sum", "a,e,g", "a"), Verdict::Better);
        assert_ne!(cmp(&f, "gc:cat", "a,b,c", "d,e,g"), Verdict::Worse);
        let r = Ranker::new(f.clone(), spec("obe:ne-co:sum"));
        assert_eq!(r.obe_sequence(&f.parse_set("a,c,g").unwrap()).unwrap(), vec![4.0, 1.0, 3.0]);
        assert!(r.obe_sequence(&f.empty_set()).unwrap().is_empty());
    }

    #[test]
    fn most_plausible_examples_on_f4() {
        let f = fixtures::f4();
        let names = |s: &str| -> Vec<String> {
            most_plausible(&f, &spec(s)).unwrap().iter().map(|e| f.format_set(e)).collect()
        };
        assert_eq!(names("r-co"), ["{a}", "{a,g}", "{a,c,g}", "{a,d,g}"]);
        assert_eq!(names("r-sst"), ["{a,c,g}"]);
        assert_eq!(names("ld-pr"), ["{a,c,g}", "{a,d,g}"]);
    }

    #[test]
    fn every_spec_is_reflexive() {
        let f = fixtures::f5();
        for s in ["r-ad", "ld-st", "cope:nonatt", "gc:bbs", "obe:cat:leximin", "lex:strdef,ncount-bbs"] {
            for e in all_subsets(3) {
                assert_eq!(compare(&f, &spec(s), &e, &e).unwrap(), Verdict::Equivalent, "{s}");
            }
        }
    }

    #[test]
    fn copeland_cap_is_enforced() {
        let f = Framework::from_letters(13, &[]);
        let r = Ranker::new(f.clone(), spec("cope:ud"));
        assert!(matches!(r.compare(&f.empty_set(), &f.empty_set()), Err(Error::TooLargeForCope { .. })));
    }

    #[test]
    fn materialized_f5_under_r_ad() {
        let f = fixtures::f5();
        let m = Ranker::new(f.clone(), spec("r-ad")).materialize(None).unwrap();
        assert_eq!(m.describe()[0], "{} ≡ {h} ≡ {h,j}");
        assert_eq!(m.describe().last().unwrap(), "{h,i,j}");
        assert!(m.complete);
    }

    #[test]
    fn candidate_mode_on_single_argument() {
        let f = Framework::from_letters(1, &[]);
        let m = Ranker::new(f.clone(), spec("r-pr"))
            .materialize(Some(vec![f.empty_set(), f.full_set()]))
            .unwrap();
        assert_eq!(m.describe(), ["{a}", "{}"]);
        assert_eq!(m.edges, vec![(1, 0)]);
        assert!(!m.complete);
    }
}

//! The argumentation framework model and its defence operators.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::argset::ArgSet;
use crate::{Error, Result};

/// An argumentation framework: named arguments and a directed attack relation.
///
/// Arguments are addressed by dense indices `0..n` assigned in declaration
/// order. Attacks are deduplicated and kept sorted.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FrameworkData", into = "FrameworkData")]
pub struct Framework {
    names: Vec<String>,
    index: HashMap<String, usize>,
    attacks: Vec<(usize, usize)>,
    attackers: Vec<ArgSet>,
    targets: Vec<ArgSet>,
}

/// Name-based wire form of a [`Framework`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameworkData {
    pub arguments: Vec<String>,
    pub attacks: Vec<(String, String)>,
}

impl TryFrom<FrameworkData> for Framework {
    type Error = Error;

    fn try_from(data: FrameworkData) -> Result<Self> {
        Framework::new(data.arguments, data.attacks)
    }
}

impl From<Framework> for FrameworkData {
    fn from(f: Framework) -> Self {
        FrameworkData {
            attacks: f
                .attacks
                .iter()
                .map(|&(x, y)| (f.names[x].clone(), f.names[y].clone()))
                .collect(),
            arguments: f.names,
        }
    }
}

impl Framework {
    /// Builds a framework from argument names and attacks given by name.
    ///
    /// Duplicate attacks collapse to one. Self-attacks are allowed.
    pub fn new<N, A, S>(names: N, attacks: A) -> Result<Self>
    where
        N: IntoIterator<Item = S>,
        A: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateArgument(name.clone()));
            }
        }
        let mut pairs = Vec::new();
        for (x, y) in attacks {
            let lookup = |s: &S| {
                index
                    .get(s.as_ref())
                    .copied()
                    .ok_or_else(|| Error::UnknownArgument(s.as_ref().to_string()))
            };
            pairs.push((lookup(&x)?, lookup(&y)?));
        }
        Ok(Self::from_indices(names, pairs))
    }

    /// Builds a framework from names and index pairs that are known to be valid.
    pub(crate) fn from_indices(names: Vec<String>, mut attacks: Vec<(usize, usize)>) -> Self {
        let n = names.len();
        attacks.sort_unstable();
        attacks.dedup();
        let mut attackers = vec![ArgSet::empty(n); n];
        let mut targets = vec![ArgSet::empty(n); n];
        for &(x, y) in &attacks {
            assert!(x < n && y < n, "attack endpoint out of range");
            attackers[y].insert(x);
            targets[x].insert(y);
        }
        let index = names.iter().cloned().zip(0..).collect();
        Framework {
            names,
            index,
            attacks,
            attackers,
            targets,
        }
    }

    /// Builds a framework whose arguments are the single letters `a`, `b`, ...
    ///
    /// Attacks are written as two-letter strings such as `"ab"`. Intended for
    /// fixtures and examples with at most 26 arguments.
    pub fn from_letters(n: usize, attacks: &[&str]) -> Self {
        assert!(n <= 26, "letter frameworks hold at most 26 arguments");
        let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let pairs = attacks
            .iter()
            .map(|s| {
                let b = s.as_bytes();
                assert_eq!(b.len(), 2, "attack {s:?} must be two letters");
                ((b[0] - b'a') as usize, (b[1] - b'a') as usize)
            })
            .collect();
        Self::from_indices(names, pairs)
    }

    /// Number of arguments.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Whether the framework has no arguments.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Argument names in index order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Name of argument `i`.
    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    /// Index of the argument called `name`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// The sorted, deduplicated attack list.
    pub fn attacks(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    /// Whether `x` attacks `y`.
    pub fn attacks_pair(&self, x: usize, y: usize) -> bool {
        self.targets[x].contains(y)
    }

    /// Position of attack `(x, y)` in [`Framework::attacks`].
    pub fn attack_index(&self, x: usize, y: usize) -> Option<usize> {
        self.attacks.binary_search(&(x, y)).ok()
    }

    /// Attackers of argument `a` (written a⁻).
    pub fn attackers(&self, a: usize) -> &ArgSet {
        &self.attackers[a]
    }

    /// Arguments attacked by `a` (written a⁺).
    pub fn targets(&self, a: usize) -> &ArgSet {
        &self.targets[a]
    }

    /// The empty set of this framework.
    pub fn empty_set(&self) -> ArgSet {
        ArgSet::empty(self.len())
    }

    /// The set of all arguments.
    pub fn full_set(&self) -> ArgSet {
        ArgSet::full(self.len())
    }

    /// Arguments attacked by some member of `e` (E⁺).
    pub fn plus(&self, e: &ArgSet) -> ArgSet {
        let mut out = self.empty_set();
        for a in e.iter() {
            out.union_with(&self.targets[a]);
        }
        out
    }

    /// Arguments attacking some member of `e` (E⁻).
    pub fn minus(&self, e: &ArgSet) -> ArgSet {
        let mut out = self.empty_set();
        for a in e.iter() {
            out.union_with(&self.attackers[a]);
        }
        out
    }

    /// Whether `e` has no internal attack.
    pub fn is_conflict_free(&self, e: &ArgSet) -> bool {
        self.plus(e).is_disjoint(e)
    }

    /// Whether every attacker of `a` is attacked by a member of `e`.
    pub fn defends(&self, e: &ArgSet, a: usize) -> bool {
        self.attackers[a].is_subset(&self.plus(e))
    }

    /// The characteristic function: all arguments defended by `e`.
    pub fn characteristic(&self, e: &ArgSet) -> ArgSet {
        let plus = self.plus(e);
        let mut out = self.empty_set();
        for a in 0..self.len() {
            if self.attackers[a].is_subset(&plus) {
                out.insert(a);
            }
        }
        out
    }

    /// The fixed point of F*ᵢ = F*ᵢ₋₁ ∪ (𝓕(F*ᵢ₋₁) \ E⁻) starting from `e`.
    ///
    /// Arguments attacking the seed set are never added, so the seed behaves
    /// as if all attacks against it were ignored.
    pub fn f_star(&self, e: &ArgSet) -> ArgSet {
        let blocked = self.minus(e);
        let mut current = e.clone();
        loop {
            let next = current.union(&self.characteristic(&current).difference(&blocked));
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// Members of `e` strongly defended by `e` against attackers in `from`.
    ///
    /// An argument is strongly defended when each of its attackers in `from`
    /// is attacked by some other member `c` of `e`, and `c` is itself strongly
    /// defended by `e` without the argument. The remaining set shrinks on every
    /// recursive step, so the recursion terminates; results are memoised on
    /// the pair (argument, remaining set).
    pub fn strongly_defended(&self, e: &ArgSet, from: &ArgSet) -> ArgSet {
        let mut memo = HashMap::new();
        let mut out = self.empty_set();
        for a in e.iter() {
            if self.sd(a, e, from, &mut memo) {
                out.insert(a);
            }
        }
        out
    }

    fn sd(
        &self,
        a: usize,
        e: &ArgSet,
        from: &ArgSet,
        memo: &mut HashMap<(usize, ArgSet), bool>,
    ) -> bool {
        if let Some(&known) = memo.get(&(a, e.clone())) {
            return known;
        }
        let rest = e.without(a);
        let threats = self.attackers[a].intersection(from);
        let ok = threats.iter().all(|b| {
            self.attackers[b]
                .intersection(&rest)
                .iter()
                .any(|c| self.sd(c, &rest, from, memo))
        });
        memo.insert((a, e.clone()), ok);
        ok
    }

    /// A copy with the attack `(x, y)` added.
    pub fn with_attack(&self, x: usize, y: usize) -> Self {
        let mut attacks = self.attacks.clone();
        attacks.push((x, y));
        Self::from_indices(self.names.clone(), attacks)
    }

    /// A copy with the attack `(x, y)` removed.
    pub fn without_attack(&self, x: usize, y: usize) -> Self {
        let attacks = self.attacks.iter().copied().filter(|&p| p != (x, y)).collect();
        Self::from_indices(self.names.clone(), attacks)
    }

    /// The sub-framework induced by `keep`.
    ///
    /// Returns the restricted framework and, for each of its arguments, the
    /// index of that argument in `self`.
    pub fn restrict(&self, keep: &ArgSet) -> (Framework, Vec<usize>) {
        let old: Vec<usize> = keep.iter().filter(|&i| i < self.len()).collect();
        let mut new_of = vec![usize::MAX; self.len()];
        for (k, &i) in old.iter().enumerate() {
            new_of[i] = k;
        }
        let names = old.iter().map(|&i| self.names[i].clone()).collect();
        let attacks = self
            .attacks
            .iter()
            .filter(|&&(x, y)| keep.contains(x) && keep.contains(y))
            .map(|&(x, y)| (new_of[x], new_of[y]))
            .collect();
        (Self::from_indices(names, attacks), old)
    }

    /// The disjoint union `self ∪ other`; `other`'s indices are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &Framework) -> Result<Framework> {
        if let Some(clash) = other.names.iter().find(|n| self.index.contains_key(*n)) {
            return Err(Error::NotDisjoint(clash.clone()));
        }
        let shift = self.len();
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut attacks = self.attacks.clone();
        attacks.extend(other.attacks.iter().map(|&(x, y)| (x + shift, y + shift)));
        Ok(Self::from_indices(names, attacks))
    }

    /// An isomorphic copy: argument `i` moves to index `perm[i]` and is
    /// renamed to `names[perm[i]]`.
    pub fn relabel(&self, perm: &[usize], names: Vec<String>) -> Result<Framework> {
        let n = self.len();
        let distinct: HashSet<usize> = perm.iter().copied().collect();
        if perm.len() != n || names.len() != n || distinct.len() != n || perm.iter().any(|&p| p >= n) {
            return Err(Error::NotABijection);
        }
        if names.iter().collect::<HashSet<_>>().len() != n {
            return Err(Error::NotABijection);
        }
        let attacks = self.attacks.iter().map(|&(x, y)| (perm[x], perm[y])).collect();
        Ok(Self::from_indices(names, attacks))
    }

    /// Maps a set through an index permutation.
    pub fn map_set(e: &ArgSet, perm: &[usize]) -> ArgSet {
        ArgSet::from_indices(perm.len(), e.iter().map(|i| perm[i]))
    }

    /// Weakly connected components, each as a set, ordered by smallest member.
    pub fn components(&self) -> Vec<ArgSet> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = self.empty_set();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for w in self.attackers[v].iter().chain(self.targets[v].iter()) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Parses a set written as comma-separated names, optionally in braces.
    ///
    /// `{}` and the empty string both denote the empty set.
    pub fn parse_set(&self, text: &str) -> Result<ArgSet> {
        let inner = text.trim();
        let inner = inner
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .unwrap_or(inner);
        let mut set = self.empty_set();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let i = self
                .index_of(part)
                .ok_or_else(|| Error::UnknownArgument(part.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Builds a set from argument names.
    pub fn set_of(&self, names: &[&str]) -> Result<ArgSet> {
        let mut set = self.empty_set();
        for name in names {
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::UnknownArgument(name.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    /// Member names of a set, in index order.
    pub fn set_names(&self, e: &ArgSet) -> Vec<String> {
        e.iter().map(|i| self.names[i].clone()).collect()
    }

    /// Renders a set as `{a,b}` in index order.
    pub fn format_set(&self, e: &ArgSet) -> String {
        format!("{{{}}}", self.set_names(e).join(","))
    }

    /// A stable content digest (SHA-256 over the canonical APX text).
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(crate::apx::to_apx(self).as_bytes());
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for Framework {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let attacks: Vec<String> = self
            .attacks
            .iter()
            .map(|&(x, y)| format!("{}->{}", self.names[x], self.names[y]))
            .collect();
        write!(f, "Framework({:?}; {})", self.names, attacks.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn build_collapses_duplicates() {
        let f = Framework::new(["a", "b"], [("a", "a"), ("a", "a")]).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.attacks().len(), 1);
    }

    #[test]
    fn build_rejects_unknown_and_duplicate() {
        assert!(matches!(
            Framework::new(["a"], [("a", "b")]),
            Err(Error::UnknownArgument(n)) if n == "b"
        ));
        assert!(matches!(
            Framework::new(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(Error::DuplicateArgument(_))
        ));
        let empty = Framework::new(Vec::<&str>::new(), Vec::<(&str, &str)>::new()).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn defence_on_f4() {
        let f = fixtures::f4();
        let b = f.set_of(&["b"]).unwrap();
        assert!(f.defends(&b, f.index_of("d").unwrap()));
        let bd = f.set_of(&["b", "d"]).unwrap();
        assert_eq!(f.format_set(&f.characteristic(&bd)), "{a,d,g}");
        assert_eq!(f.format_set(&f.f_star(&b)), "{b,d,g}");
        let acg = f.set_of(&["a", "c", "g"]).unwrap();
        assert_eq!(f.f_star(&acg), acg);
    }

    #[test]
    fn self_attacker_is_undefended_by_empty_set() {
        let f = fixtures::f8();
        assert!(!f.defends(&f.empty_set(), 0));
        assert!(f.defends(&f.full_set(), 1));
    }

    #[test]
    fn chain_operators() {
        let f = fixtures::f10();
        let b = f.set_of(&["b"]).unwrap();
        assert_eq!(f.format_set(&f.characteristic(&b)), "{a,d}");
        assert_eq!(f.format_set(&f.f_star(&b)), "{b,d,f}");
        let empty = Framework::from_letters(0, &[]);
        assert!(empty.characteristic(&empty.empty_set()).is_empty());
    }

    #[test]
    fn strong_defence_on_f4() {
        let f = fixtures::f4();
        let abf = f.set_of(&["a", "b", "f"]).unwrap();
        let g = f.set_of(&["g"]).unwrap();
        let sd = f.strongly_defended(&abf, &g);
        assert!(sd.contains(f.index_of("a").unwrap()));
        // b's only attacker lies outside {g}, so it is vacuously defended.
        assert_eq!(f.format_set(&sd), "{a,b}");
        let fset = f.set_of(&["f"]).unwrap();
        assert!(f.strongly_defended(&g, &fset).is_empty());
        assert!(f.strongly_defended(&f.empty_set(), &f.full_set()).is_empty());
    }

    #[test]
    fn strong_defence_needs_a_chain_of_other_defenders() {
        // c defends b against a only if c is itself defended without b.
        let f = Framework::from_letters(4, &["ab", "ca", "dc", "bd"]);
        let bc = f.set_of(&["b", "c"]).unwrap();
        let attackers = f.full_set();
        // b needs c against a; c needs b against d, but b is removed by then.
        assert!(f.strongly_defended(&bc, &attackers).is_empty());
    }

    #[test]
    fn components_and_restrict() {
        let f = fixtures::f7();
        let comps = f.components();
        assert_eq!(comps.len(), 2);
        let (sub, map) = f.restrict(&comps[1]);
        assert_eq!(sub.names(), &["c".to_string(), "d".to_string()]);
        assert_eq!(map, vec![2, 3]);
        assert_eq!(sub.attacks(), &[(0, 1)]);
    }

    #[test]
    fn union_and_relabel() {
        let f = Framework::from_letters(2, &["ab"]);
        let g = Framework::new(["x"], [("x", "x")]).unwrap();
        let u = f.disjoint_union(&g).unwrap();
        assert_eq!(u.len(), 3);
        assert!(u.attacks_pair(2, 2));
        assert!(f.disjoint_union(&f).is_err());
        let r = f.relabel(&[1, 0], vec!["p".into(), "q".into()]).unwrap();
        assert!(r.attacks_pair(1, 0));
        assert!(f.relabel(&[0, 0], vec!["p".into(), "q".into()]).is_err());
    }

    #[test]
    fn set_syntax() {
        let f = fixtures::f4();
        assert!(f.parse_set("{}").unwrap().is_empty());
        assert_eq!(f.parse_set("{a, c}").unwrap(), f.parse_set("a,c").unwrap());
        assert!(f.parse_set("a,z").is_err());
    }

    #[test]
    fn serde_round_trip() {
        let f = fixtures::f4();
        let json = serde_json::to_string(&f).unwrap();
        let back: Framework = serde_json::from_str(&json).unwrap();
        assert_eq!(f, back);
    }
}

//! Classical extension semantics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::argset::{all_subsets, ArgSet};
use crate::framework::Framework;
use crate::{Error, Result};

/// The supported extension semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SemanticsId {
    /// Conflict-free sets.
    Cf,
    /// Admissible sets.
    Ad,
    /// Complete extensions.
    Co,
    /// The grounded extension.
    Gr,
    /// Preferred extensions.
    Pr,
    /// Stable extensions.
    St,
    /// Semi-stable extensions.
    Sst,
}

impl SemanticsId {
    /// All semantics in a fixed order.
    pub const ALL: [SemanticsId; 7] = [
        SemanticsId::Cf,
        SemanticsId::Ad,
        SemanticsId::Co,
        SemanticsId::Gr,
        SemanticsId::Pr,
        SemanticsId::St,
        SemanticsId::Sst,
    ];

    /// Short lowercase name (`cf`, `ad`, ...).
    pub fn as_str(self) -> &'static str {
        match self {
            SemanticsId::Cf => "cf",
            SemanticsId::Ad => "ad",
            SemanticsId::Co => "co",
            SemanticsId::Gr => "gr",
            SemanticsId::Pr => "pr",
            SemanticsId::St => "st",
            SemanticsId::Sst => "sst",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for SemanticsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SemanticsId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SemanticsId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::InvalidSemantics(s.to_string()))
    }
}

/// The extensions of one semantics, deduplicated and canonically sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionFamily {
    pub semantics: SemanticsId,
    pub extensions: Vec<ArgSet>,
}

impl ExtensionFamily {
    /// Whether `e` is one of the extensions.
    pub fn contains(&self, e: &ArgSet) -> bool {
        self.extensions.binary_search(e).is_ok()
    }

    /// Number of extensions containing argument `a`.
    pub fn count_containing(&self, a: usize) -> usize {
        self.extensions.iter().filter(|e| e.contains(a)).count()
    }
}

/// Whether `e` is admissible: conflict-free and defending each member.
pub fn is_admissible(f: &Framework, e: &ArgSet) -> bool {
    f.is_conflict_free(e) && e.is_subset(&f.characteristic(e))
}

/// Whether `e` is complete: admissible and containing everything it defends.
pub fn is_complete(f: &Framework, e: &ArgSet) -> bool {
    f.is_conflict_free(e) && f.characteristic(e) == *e
}

/// Whether `e` is stable: conflict-free and attacking every outsider.
pub fn is_stable(f: &Framework, e: &ArgSet) -> bool {
    f.is_conflict_free(e) && e.union(&f.plus(e)) == f.full_set()
}

/// The grounded extension: the least fixed point of the characteristic function.
pub fn grounded(f: &Framework) -> ArgSet {
    let mut current = f.empty_set();
    loop {
        let next = f.characteristic(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

fn check_cap(f: &Framework, cap: usize) -> Result<()> {
    if f.len() > cap || f.len() >= 64 {
        return Err(Error::TooLarge {
            n: f.len(),
            cap: cap.min(63),
        });
    }
    Ok(())
}

fn maximal(mut sets: Vec<ArgSet>, key: impl Fn(&ArgSet) -> ArgSet) -> Vec<ArgSet> {
    let keys: Vec<ArgSet> = sets.iter().map(&key).collect();
    let keep: Vec<bool> = (0..sets.len())
        .map(|i| {
            !(0..sets.len()).any(|j| keys[i] != keys[j] && keys[i].is_subset(&keys[j]))
        })
        .collect();
    let mut k = 0;
    sets.retain(|_| {
        k += 1;
        keep[k - 1]
    });
    sets
}

/// Enumerates σ(F) for frameworks with at most `cap` arguments.
pub fn enumerate(f: &Framework, sigma: SemanticsId, cap: usize) -> Result<ExtensionFamily> {
    check_cap(f, cap)?;
    let n = f.len();
    let mut extensions = match sigma {
        SemanticsId::Gr => vec![grounded(f)],
        SemanticsId::Cf => all_subsets(n).filter(|e| f.is_conflict_free(e)).collect(),
        SemanticsId::Ad => all_subsets(n).filter(|e| is_admissible(f, e)).collect(),
        SemanticsId::Co => all_subsets(n).filter(|e| is_complete(f, e)).collect(),
        SemanticsId::St => all_subsets(n).filter(|e| is_stable(f, e)).collect(),
        SemanticsId::Pr => {
            // Every admissible set lies below a complete one, so maximal
            // complete extensions are exactly the maximal admissible sets.
            let co: Vec<ArgSet> = all_subsets(n).filter(|e| is_complete(f, e)).collect();
            maximal(co, ArgSet::clone)
        }
        SemanticsId::Sst => {
            let co: Vec<ArgSet> = all_subsets(n).filter(|e| is_complete(f, e)).collect();
            maximal(co, |e| e.union(&f.plus(e)))
        }
    };
    extensions.sort();
    extensions.dedup();
    Ok(ExtensionFamily {
        semantics: sigma,
        extensions,
    })
}

/// Evaluates the defining predicate of σ on one set.
///
/// Preferred, grounded and semi-stable membership need global information;
/// those cases enumerate and so are subject to `cap`.
pub fn is_extension(f: &Framework, sigma: SemanticsId, e: &ArgSet, cap: usize) -> Result<bool> {
    Ok(match sigma {
        SemanticsId::Cf => f.is_conflict_free(e),
        SemanticsId::Ad => is_admissible(f, e),
        SemanticsId::Co => is_complete(f, e),
        SemanticsId::St => is_stable(f, e),
        SemanticsId::Gr => grounded(f) == *e,
        SemanticsId::Pr | SemanticsId::Sst => enumerate(f, sigma, cap)?.contains(e),
    })
}

/// Lazily computed extension families for one framework.
#[derive(Debug, Default)]
pub struct FamilyCache {
    slots: [std::sync::OnceLock<Result<ExtensionFamily>>; 7],
}

impl FamilyCache {
    /// The family for σ, computed on first use.
    pub fn get(&self, f: &Framework, sigma: SemanticsId, cap: usize) -> Result<&ExtensionFamily> {
        self.slots[sigma.slot()]
            .get_or_init(|| enumerate(f, sigma, cap))
            .as_ref()
            .map_err(Clone::clone)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn names(f: &Framework, fam: &ExtensionFamily) -> Vec<String> {
        fam.extensions.iter().map(|e| f.format_set(e)).collect()
    }

    #[test]
    fn f4_families() {
        let f = fixtures::f4();
        let get = |s| names(&f, &enumerate(&f, s, 20).unwrap());
        assert_eq!(get(SemanticsId::Co), ["{a}", "{a,g}", "{a,c,g}", "{a,d,g}"]);
        assert_eq!(get(SemanticsId::Gr), ["{a}"]);
        assert_eq!(get(SemanticsId::Pr), ["{a,c,g}", "{a,d,g}"]);
        assert_eq!(get(SemanticsId::St), ["{a,c,g}"]);
        assert_eq!(get(SemanticsId::Sst), ["{a,c,g}"]);
    }

    #[test]
    fn odd_cycle_has_no_stable_extension() {
        let f = fixtures::f6();
        assert!(enumerate(&f, SemanticsId::St, 20).unwrap().extensions.is_empty());
        assert_eq!(names(&f, &enumerate(&f, SemanticsId::Sst, 20).unwrap()), ["{}"]);
    }

    #[test]
    fn empty_framework_has_empty_extension() {
        let f = Framework::from_letters(0, &[]);
        for s in SemanticsId::ALL {
            assert_eq!(names(&f, &enumerate(&f, s, 20).unwrap()), ["{}"], "{s}");
        }
    }

    #[test]
    fn predicates() {
        let f = fixtures::f4();
        let d = f.set_of(&["d"]).unwrap();
        assert!(is_extension(&f, SemanticsId::Ad, &d, 20).unwrap());
        assert!(!is_extension(&f, SemanticsId::Co, &d, 20).unwrap());
        let f8 = fixtures::f8();
        let a = f8.set_of(&["a"]).unwrap();
        assert!(!is_extension(&f8, SemanticsId::Cf, &a, 20).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let f = Framework::from_letters(5, &[]);
        assert_eq!(
            enumerate(&f, SemanticsId::Cf, 4),
            Err(Error::TooLarge { n: 5, cap: 4 })
        );
    }

    #[test]
    fn semantics_names_round_trip() {
        for s in SemanticsId::ALL {
            assert_eq!(s.as_str().parse::<SemanticsId>().unwrap(), s);
        }
        assert!("xx".parse::<SemanticsId>().is_err());
    }
}

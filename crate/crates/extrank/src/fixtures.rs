//! Small named frameworks used throughout the tests and documentation.
//!
//! Each fixture also exists as an APX file in the crate's `corpus/`
//! directory; `tests/corpus.rs` checks that both agree.

use crate::framework::Framework;

fn named(names: &[&str], attacks: &[(&str, &str)]) -> Framework {
    Framework::new(names.iter().copied(), attacks.iter().copied()).expect("fixture is well formed")
}

/// `S` attacks itself and `A`; `A` attacks `G`.
pub fn f1() -> Framework {
    named(&["G", "A", "S"], &[("A", "G"), ("S", "A"), ("S", "S")])
}

/// Seven arguments with a mutual attack `c`/`d`, a self-attacker `e` and a
/// mutual attack `f`/`g`.
pub fn f4() -> Framework {
    Framework::from_letters(7, &["ab", "bc", "cd", "dc", "ce", "cf", "df", "fg", "gf", "ee"])
}

/// The chain `h → i → j`.
pub fn f5() -> Framework {
    named(&["h", "i", "j"], &[("h", "i"), ("i", "j")])
}

/// The odd cycle `a → b → c → a`.
pub fn f6() -> Framework {
    Framework::from_letters(3, &["ab", "bc", "ca"])
}

/// Two disjoint single attacks `a → b` and `c → d`.
pub fn f7() -> Framework {
    Framework::from_letters(4, &["ab", "cd"])
}

/// A self-attacker `a` next to an isolated `b`.
pub fn f8() -> Framework {
    Framework::from_letters(2, &["aa"])
}

/// Addition-robustness counterexample for complete-based orders; add `(a, b)`.
pub fn f9() -> Framework {
    Framework::from_letters(7, &["ac", "ca", "ce", "eb", "bd", "de", "af", "cg", "ff", "gg"])
}

/// The chain `a → b → c → d → e → f`.
pub fn f10() -> Framework {
    Framework::from_letters(6, &["ab", "bc", "cd", "de", "ef"])
}

/// The even cycle `a → b → c → d → a`.
pub fn f11() -> Framework {
    Framework::from_letters(4, &["ab", "bc", "cd", "da"])
}

/// Two mutual attacks feeding `e → f`; add `(a, b)`.
pub fn f12() -> Framework {
    Framework::from_letters(6, &["ac", "ca", "bd", "db", "ce", "de", "ef"])
}

/// Mutual attack `h`/`i`, `i → j` and a self-attacking `j`.
pub fn f13() -> Framework {
    named(
        &["h", "i", "j"],
        &[("h", "i"), ("i", "h"), ("i", "j"), ("j", "j")],
    )
}

/// Mutual attack `h`/`i` and `i → j`.
pub fn f14() -> Framework {
    named(&["h", "i", "j"], &[("h", "i"), ("i", "h"), ("i", "j")])
}

/// A star `a → b`, `a → c` next to `d → e`.
pub fn f15() -> Framework {
    Framework::from_letters(5, &["ab", "ac", "de"])
}

/// A 3-clique next to a self-attacking hub; composition counterexample.
pub fn f15b() -> Framework {
    Framework::from_letters(
        7,
        &["ab", "ba", "ca", "ac", "bc", "cb", "dd", "de", "ed", "df", "fg"],
    )
}

/// Same graph as [`f15`]; decomposition counterexample for Copeland orders.
pub fn f16() -> Framework {
    Framework::from_letters(5, &["ab", "ac", "de"])
}

/// Isolated `a`, a star from `b` and a mutual attack under `g`; add `(a, b)`.
pub fn f17() -> Framework {
    Framework::from_letters(7, &["bc", "bd", "gf", "ge", "fe", "ef"])
}

/// Mutual attack `a`/`b` next to a star from `c`.
pub fn f18() -> Framework {
    Framework::from_letters(5, &["ab", "ba", "cd", "ce"])
}

/// `c → a`, `d → b` and isolated `e`, `f`; add `(a, b)`.
pub fn f19() -> Framework {
    Framework::from_letters(6, &["ca", "db"])
}

/// Three attackers of `e` plus isolated `a`, `f`; add `(a, b)`.
pub fn f20() -> Framework {
    Framework::from_letters(6, &["bc", "be", "ce", "de"])
}

/// A self-attacking `e` above a chain, isolated `f`; add `(a, b)`.
pub fn f21() -> Framework {
    Framework::from_letters(6, &["bc", "cd", "ea", "eb", "ee"])
}

/// Two components with mutual attacks; decomposition counterexample.
pub fn f22() -> Framework {
    Framework::from_letters(7, &["ab", "ba", "ac", "bc", "de", "ef", "eg", "fg", "gf"])
}

/// Two chains of length three.
pub fn f23() -> Framework {
    Framework::from_letters(6, &["ab", "bc", "de", "ef"])
}

/// `c` attacked by `b` and `d` with mutual attacks `a`/`f` and `d`/`e`.
pub fn f24() -> Framework {
    Framework::from_letters(6, &["ab", "bc", "dc", "de", "ed", "af", "fa"])
}

/// Mutual attacks feeding `e → f` plus self-attacking guards of `g`; add `(a, b)`.
pub fn f25() -> Framework {
    named(
        &["a", "b", "c", "d", "e", "f", "g", "bb", "cc", "ff"],
        &[
            ("a", "c"),
            ("c", "a"),
            ("b", "d"),
            ("d", "b"),
            ("c", "e"),
            ("d", "e"),
            ("e", "f"),
            ("b", "bb"),
            ("c", "cc"),
            ("f", "ff"),
            ("ff", "g"),
            ("cc", "g"),
            ("bb", "g"),
            ("bb", "bb"),
            ("cc", "cc"),
            ("ff", "ff"),
        ],
    )
}

/// Self-attackers `b`, `d`, `e` with `b → c`; add `(a, b)`.
pub fn f26() -> Framework {
    Framework::from_letters(5, &["bc", "bb", "dd", "ee"])
}

/// Stable-extension counterexample; add `(a, b)`.
pub fn f27() -> Framework {
    Framework::from_letters(6, &["bc", "bd", "be", "dc", "cd", "de", "ed", "da", "af", "ff"])
}

/// Max-aggregation counterexample; add `(a, b)`.
pub fn f28() -> Framework {
    Framework::from_letters(6, &["bc", "ca", "bd", "bf", "fb", "de", "fd"])
}

/// Min-aggregation counterexample; add `(a, b)`.
pub fn f29() -> Framework {
    Framework::from_letters(5, &["ac", "cb", "bd", "da", "ae", "ea", "ce", "ec"])
}

/// Grounded counterexample for sum-like aggregation; add `(a, b)`.
pub fn f30() -> Framework {
    Framework::from_letters(6, &["bc", "bd", "ff", "ee"])
}

/// Grounded counterexample for max and min; add `(a, b)`.
pub fn f31() -> Framework {
    Framework::from_letters(5, &["bc", "cd", "aa"])
}

/// Every argument has the same h-categoriser score; add `(a, b)`.
pub fn f32() -> Framework {
    Framework::from_letters(7, &["bc", "be", "cd", "ef", "ga", "gb", "gg"])
}

/// Diamond `b → c, d → e`; add `(a, b)`.
pub fn f33() -> Framework {
    Framework::from_letters(5, &["bc", "bd", "ce", "de"])
}

/// Every fixture by its corpus name.
pub fn all() -> Vec<(&'static str, Framework)> {
    vec![
        ("f01", f1()),
        ("f04", f4()),
        ("f05", f5()),
        ("f06", f6()),
        ("f07", f7()),
        ("f08", f8()),
        ("f09", f9()),
        ("f10", f10()),
        ("f11", f11()),
        ("f12", f12()),
        ("f13", f13()),
        ("f14", f14()),
        ("f15", f15()),
        ("f15b", f15b()),
        ("f16", f16()),
        ("f17", f17()),
        ("f18", f18()),
        ("f19", f19()),
        ("f20", f20()),
        ("f21", f21()),
        ("f22", f22()),
        ("f23", f23()),
        ("f24", f24()),
        ("f25", f25()),
        ("f26", f26()),
        ("f27", f27()),
        ("f28", f28()),
        ("f29", f29()),
        ("f30", f30()),
        ("f31", f31()),
        ("f32", f32()),
        ("f33", f33()),
    ]
}

/// Looks up a fixture by corpus name.
pub fn by_name(name: &str) -> Option<Framework> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, f)| f)
}

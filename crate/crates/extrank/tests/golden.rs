use std::collections::BTreeSet;
use std::fs;

use extrank::engine::Ranker;
use extrank::report::{emit_dot, RankingReport};
use extrank::semantics::{enumerate, SemanticsId};
use extrank::{corpus, fixtures, gradual, Verdict, DEFAULT_ENUMERATION_CAP};

/// Every (fixture, spec) pair named by a corpus manifest.
fn golden_rankings() -> Vec<Ranker> {
    let mut pairs = BTreeSet::new();
    for entry in fs::read_dir(corpus::corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        let file = path.file_name().unwrap().to_string_lossy().into_owned();
        let Some(stem) = file.strip_suffix(".expect") else { continue };
        let fixture = stem.split('.').next().unwrap().to_string();
        for a in corpus::parse_manifest(&fs::read_to_string(&path).unwrap()).unwrap() {
            pairs.insert((fixture.clone(), a.spec.to_string()));
        }
    }
    pairs
        .into_iter()
        .map(|(fx, s)| Ranker::new(fixtures::by_name(&fx).unwrap(), s.parse().unwrap()))
        .collect()
}

#[test]
fn json_reports_round_trip() {
    for ranker in golden_rankings() {
        let report = RankingReport::from_ranking(&ranker.materialize(None).unwrap());
        let back = RankingReport::from_json(&report.to_json()).unwrap();
        assert_eq!(back, report, "{}", ranker.spec());
    }
}

#[test]
fn dot_output_is_deterministic() {
    for ranker in golden_rankings() {
        let first = emit_dot(&ranker.materialize(None).unwrap());
        let again = Ranker::new(ranker.framework().clone(), ranker.spec().clone());
        assert_eq!(emit_dot(&again.materialize(None).unwrap()), first, "{}", ranker.spec());
    }
}

#[test]
fn f4_complete_extensions() {
    let f = fixtures::f4();
    let co = enumerate(&f, SemanticsId::Co, DEFAULT_ENUMERATION_CAP).unwrap().extensions;
    let mut want: Vec<_> = ["a", "a,g", "a,c,g", "a,d,g"].iter().map(|s| f.parse_set(s).unwrap()).collect();
    want.sort();
    assert_eq!(co, want);
}

#[test]
fn f4_argument_rankings() {
    let f = fixtures::f4();
    let cat = gradual::rank(&f, gradual::GradualId::Cat).unwrap();
    assert_eq!(cat.describe(&f), "a > g > d > e > b > c > f");
    let bbs = gradual::rank(&f, gradual::GradualId::Bbs).unwrap();
    assert_eq!(bbs.describe(&f), "a > g > d > b > e > c > f");
}

#[test]
fn r_ad_leaves_bg_and_af_incomparable() {
    let f = fixtures::f4();
    let ranker = Ranker::new(f.clone(), "r-ad".parse().unwrap());
    let (bg, af) = (f.parse_set("b,g").unwrap(), f.parse_set("a,f").unwrap());
    assert_eq!(ranker.compare(&bg, &af).unwrap(), Verdict::Incomparable);
}

#[test]
fn r_sst_chain_on_f4() {
    let f = fixtures::f4();
    let ranker = Ranker::new(f.clone(), "r-sst".parse().unwrap());
    let chain = ["a,c,g", "a,d,g", "a,g", "g", "d", "b", "b,f", "a,b"];
    for w in chain.windows(2) {
        let (e, e2) = (f.parse_set(w[0]).unwrap(), f.parse_set(w[1]).unwrap());
        assert_eq!(ranker.compare(&e, &e2).unwrap(), Verdict::Better, "{} vs {}", w[0], w[1]);
    }
}

use extrank::argset::all_subsets;
use extrank::engine::Ranker;
use extrank::fuzz::random_framework;
use extrank::semantics::{enumerate, SemanticsId};
use extrank::{apx, Framework, DEFAULT_ENUMERATION_CAP};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn framework() -> impl Strategy<Value = Framework> {
    (1usize..=5, any::<u64>(), 0.05f64..0.6)
        .prop_map(|(n, seed, density)| random_framework(&mut ChaCha8Rng::seed_from_u64(seed), n, density))
}

fn spec_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec![
        "r-ad",
        "r-c-co",
        "r-pr",
        "r-sst",
        "ld-pr",
        "lex:ud,conflicts",
        "cope:conflicts,ud",
        "gc:cat",
        "gc:bbs",
        "obe:ne-co:sum",
        "obe:cat:leximin",
        "obe:bbs-sv:max",
    ])
}

proptest! {
    #[test]
    fn apx_round_trips(f in framework()) {
        prop_assert_eq!(apx::parse_apx(&apx::to_apx(&f)).unwrap(), f);
    }

    #[test]
    fn swapping_a_pair_flips_the_verdict(f in framework(), s in spec_name(), x in any::<u64>(), y in any::<u64>()) {
        let ranker = Ranker::new(f.clone(), s.parse().unwrap());
        let m = 1u64 << f.len();
        let e = extrank::ArgSet::from_indices(f.len(), (0..f.len()).filter(|i| (x % m) >> i & 1 == 1));
        let e2 = extrank::ArgSet::from_indices(f.len(), (0..f.len()).filter(|i| (y % m) >> i & 1 == 1));
        prop_assert_eq!(ranker.compare(&e, &e2).unwrap(), ranker.compare(&e2, &e).unwrap().flip());
    }

    #[test]
    fn grounded_lies_in_every_complete_extension(f in framework()) {
        let gr = &enumerate(&f, SemanticsId::Gr, DEFAULT_ENUMERATION_CAP).unwrap().extensions[0];
        let co = enumerate(&f, SemanticsId::Co, DEFAULT_ENUMERATION_CAP).unwrap();
        prop_assert!(co.contains(gr));
        prop_assert!(co.extensions.iter().all(|e| gr.is_subset(e)));
    }

    #[test]
    fn characteristic_function_is_monotone(f in framework()) {
        let subsets: Vec<_> = all_subsets(f.len()).collect();
        for e in &subsets {
            for e2 in &subsets {
                if e.is_subset(e2) {
                    prop_assert!(f.characteristic(e).is_subset(&f.characteristic(e2)));
                }
            }
        }
    }

    #[test]
    fn most_plausible_sets_are_unbeaten(f in framework(), s in spec_name()) {
        let ranker = Ranker::new(f.clone(), s.parse().unwrap());
        let top = ranker.most_plausible().unwrap();
        prop_assert!(!top.is_empty());
        for e in &top {
            for e2 in all_subsets(f.len()) {
                prop_assert_ne!(ranker.compare(&e2, e).unwrap(), extrank::Verdict::Better);
            }
        }
    }
}

use std::fs;

use extrank::{apx, corpus, fixtures};

fn read(name: &str) -> String {
    fs::read_to_string(corpus::corpus_dir().join(name)).unwrap()
}

#[test]
fn apx_files_match_fixtures() {
    for (name, f) in fixtures::all() {
        let parsed = apx::parse_apx(&read(&format!("{name}.apx"))).unwrap();
        assert_eq!(parsed, f, "{name}");
        assert_eq!(parsed.digest(), f.digest(), "{name}");
    }
}

#[test]
fn manifests_replay() {
    let mut total = 0;
    for entry in fs::read_dir(corpus::corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        let file = path.file_name().unwrap().to_string_lossy().into_owned();
        let Some(stem) = file.strip_suffix(".expect") else { continue };
        let f = fixtures::by_name(stem.split('.').next().unwrap()).unwrap();
        for a in corpus::parse_manifest(&fs::read_to_string(&path).unwrap()).unwrap() {
            assert_eq!(a.evaluate(&f).unwrap(), a.verdict, "{file}:{} {}", a.line, a.spec);
            total += 1;
        }
    }
    assert_eq!(total, 459);
}

#[test]
fn tables_parse() {
    let cells = corpus::parse_tables(&read("tables.txt")).unwrap();
    assert_eq!(cells.len(), 639);
    let violated = cells.iter().filter(|c| c.expect == corpus::Expectation::Violated).count();
    assert_eq!(violated, 440);
    assert_eq!(cells.iter().filter(|c| c.disputed.is_some()).count(), 13);
    for t in 1..=8 {
        assert!(cells.iter().any(|c| c.table == t), "table {t} is empty");
    }
}

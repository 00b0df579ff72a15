//! The counterexample corpus: expected-verdict manifests and principle tables.
//!
//! Manifests hold one assertion per line, `spec left right verdict`, with sets
//! written as comma-separated names inside braces without spaces (`{}` is the
//! empty set) and `#` starting a comment. Table files hold one principle cell per line,
//! `table spec principle expect [fixture]`, where `expect` is `holds` or
//! `violated` and the fixture names the framework a violation is replayed on.
//! A table line whose comment starts with `disputed:` records a cell that the
//! implementation is known not to reproduce, with the reason.

use std::path::PathBuf;

use crate::fixtures;
use crate::framework::Framework;
use crate::fuzz::{fuzz, FuzzConfig};
use crate::principles::{check, PrincipleId, PrincipleReport};
use crate::spec::RankingSpec;
use crate::{Error, Result, Verdict};

/// One line of an expected-verdict manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct Assertion {
    pub spec: RankingSpec,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub verdict: Verdict,
    /// One-based line number in the manifest.
    pub line: usize,
}

impl Assertion {
    /// Compares the two sets in `f` and returns the verdict found.
    pub fn evaluate(&self, f: &Framework) -> Result<Verdict> {
        let e = f.set_of(&names(&self.left))?;
        let e2 = f.set_of(&names(&self.right))?;
        crate::engine::compare(f, &self.spec, &e, &e2)
    }
}

fn names(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn corpus_error(line: usize, message: impl std::fmt::Display) -> Error {
    Error::Corpus(format!("line {line}: {message}"))
}

fn parse_braced(word: &str, line: usize) -> Result<Vec<String>> {
    let inner = word
        .strip_prefix('{')
        .and_then(|w| w.strip_suffix('}'))
        .ok_or_else(|| corpus_error(line, format!("expected a braced set, found `{word}`")))?;
    Ok(inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect())
}

/// Non-empty lines as (line number, words, comment).
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>, Option<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let (body, comment) = match raw.split_once('#') {
            Some((body, comment)) => (body, Some(comment.trim())),
            None => (raw, None),
        };
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words, comment))
    })
}

/// Parses an expected-verdict manifest.
pub fn parse_manifest(text: &str) -> Result<Vec<Assertion>> {
    content_lines(text)
        .map(|(line, words, _)| {
            let [spec, left, right, verdict] = words[..] else {
                return Err(corpus_error(line, "expected `spec left right verdict`"));
            };
            Ok(Assertion {
                spec: spec.parse().map_err(|e| corpus_error(line, e))?,
                left: parse_braced(left, line)?,
                right: parse_braced(right, line)?,
                verdict: verdict.parse().map_err(|e| corpus_error(line, e))?,
                line,
            })
        })
        .collect()
}

/// What a table cell claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Holds,
    Violated,
}

/// One cell of a principle table.
#[derive(Debug, Clone, PartialEq)]
pub struct TableCell {
    pub table: u8,
    pub spec: RankingSpec,
    pub principle: PrincipleId,
    pub expect: Expectation,
    /// Fixture replaying a violation; required for violated cells.
    pub fixture: Option<String>,
    /// Why the implementation is known to disagree with the cell.
    pub disputed: Option<String>,
    pub line: usize,
}

impl TableCell {
    /// A short label such as `T2 r-co addition-robustness`.
    pub fn label(&self) -> String {
        format!("T{} {} {}", self.table, self.spec, self.principle)
    }
}

/// Parses a table file.
pub fn parse_tables(text: &str) -> Result<Vec<TableCell>> {
    content_lines(text)
        .map(|(line, words, comment)| {
            let (table, spec, principle, expect, fixture) = match words[..] {
                [t, s, p, e] => (t, s, p, e, None),
                [t, s, p, e, fx] => (t, s, p, e, Some(fx.to_string())),
                _ => return Err(corpus_error(line, "expected `table spec principle expect [fixture]`")),
            };
            let expect = match expect {
                "holds" => Expectation::Holds,
                "violated" => Expectation::Violated,
                other => return Err(corpus_error(line, format!("unknown expectation `{other}`"))),
            };
            if expect == Expectation::Violated && fixture.is_none() {
                return Err(corpus_error(line, "violated cells need a fixture"));
            }
            if let Some(name) = &fixture {
                if fixtures::by_name(name).is_none() {
                    return Err(corpus_error(line, format!("unknown fixture `{name}`")));
                }
            }
            Ok(TableCell {
                table: table.parse().map_err(|_| corpus_error(line, "table must be a number"))?,
                spec: spec.parse().map_err(|e| corpus_error(line, e))?,
                principle: principle.parse().map_err(|e| corpus_error(line, e))?,
                expect,
                fixture,
                disputed: comment
                    .and_then(|c| c.strip_prefix("disputed:"))
                    .map(|reason| reason.trim().to_string()),
                line,
            })
        })
        .collect()
}

/// The result of running one cell.
#[derive(Debug, Clone)]
pub struct CellResult {
    pub report: PrincipleReport,
    /// Whether the report agrees with the cell.
    pub reproduced: bool,
}

/// Runs a cell: fuzzing for cells that hold, replay on the fixture for
/// violated cells. A replayed witness must also re-verify.
pub fn run_cell(cell: &TableCell, config: &FuzzConfig) -> Result<CellResult> {
    match cell.expect {
        Expectation::Holds => {
            let report = fuzz(&cell.spec, cell.principle, config)?;
            let reproduced = !report.outcome.is_violated();
            Ok(CellResult { report, reproduced })
        }
        Expectation::Violated => {
            let name = cell.fixture.as_deref().expect("parser requires a fixture");
            let f = fixtures::by_name(name).expect("parser checks the fixture name");
            let report = check(&f, &cell.spec, cell.principle, config.seed)?;
            let reproduced = match report.outcome.witness() {
                Some(w) => w.recheck(&cell.spec)?,
                None => false,
            };
            Ok(CellResult { report, reproduced })
        }
    }
}

/// Directory holding the corpus files shipped with the crate.
pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_lines_parse() {
        let text = "# comment\nr-co {h,j} {h} better\n\nr-ad {} {b,g} worse  # trailing\n";
        let a = parse_manifest(text).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a[0].left, ["h", "j"]);
        assert_eq!(a[1].left, Vec::<String>::new());
        assert_eq!(a[1].right, ["b", "g"]);
        assert_eq!((a[1].verdict, a[1].line), (Verdict::Worse, 4));
    }

    #[test]
    fn malformed_manifest_lines_are_rejected() {
        assert!(parse_manifest("r-co {h} better").is_err());
        assert!(parse_manifest("r-co h {} better").is_err());
        assert!(parse_manifest("r-co {h} {} greater").is_err());
    }

    #[test]
    fn table_lines_parse() {
        let cells = parse_tables("2 r-ad strong-reinstatement violated f05\n2 r-co composition holds\n").unwrap();
        assert_eq!(cells[0].fixture.as_deref(), Some("f05"));
        assert_eq!(cells[1].expect, Expectation::Holds);
        assert_eq!(cells[0].label(), "T2 r-ad strong-reinstatement");
        assert_eq!(cells[0].disputed, None);
        let disputed = parse_tables("2 r-ad composition holds  # disputed: some reason").unwrap();
        assert_eq!(disputed[0].disputed.as_deref(), Some("some reason"));
        assert!(parse_tables("2 r-ad strong-reinstatement violated").is_err());
        assert!(parse_tables("2 r-ad strong-reinstatement violated f99").is_err());
    }

    #[test]
    fn violated_cell_replays() {
        let cells = parse_tables("2 r-ad strong-reinstatement violated f05").unwrap();
        let r = run_cell(&cells[0], &FuzzConfig::default()).unwrap();
        assert!(r.reproduced);
    }
}

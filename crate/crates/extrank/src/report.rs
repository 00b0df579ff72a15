//! Versioned JSON reports and DOT rendering of materialised rankings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::engine::MaterializedRanking;
use crate::framework::FrameworkData;
use crate::{Error, Result};

/// Version of the JSON report schema.
pub const SCHEMA_VERSION: u32 = 1;

/// A materialised ranking in serialisable form; sets are lists of names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankingReport {
    pub schema_version: u32,
    pub framework_digest: String,
    pub framework: FrameworkData,
    pub spec: String,
    /// Whether every subset was ranked, as opposed to a candidate list.
    pub complete: bool,
    /// Equivalence classes, best first.
    pub classes: Vec<Vec<Vec<String>>>,
    /// Transitively reduced strict edges `[worse, better]` between classes.
    pub edges: Vec<(usize, usize)>,
    /// The base relation deciding each edge, where one exists.
    pub provenance: Vec<Option<String>>,
    /// Classes holding a most plausible set.
    pub most_plausible: Vec<usize>,
}

impl RankingReport {
    /// Builds the report of a materialised ranking.
    pub fn from_ranking(r: &MaterializedRanking) -> Self {
        RankingReport {
            schema_version: SCHEMA_VERSION,
            framework_digest: r.framework.digest(),
            framework: r.framework.clone().into(),
            spec: r.spec.to_string(),
            complete: r.complete,
            classes: r
                .classes
                .iter()
                .map(|c| c.iter().map(|e| r.framework.set_names(e)).collect())
                .collect(),
            edges: r.edges.clone(),
            provenance: r.provenance.iter().map(|p| p.map(|rel| rel.to_string())).collect(),
            most_plausible: r.maximal.clone(),
        }
    }

    /// Pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    /// Parses a report, rejecting unknown schema versions.
    pub fn from_json(text: &str) -> Result<Self> {
        let report: RankingReport =
            serde_json::from_str(text).map_err(|e| Error::Corpus(format!("invalid report: {e}")))?;
        if report.schema_version != SCHEMA_VERSION {
            return Err(Error::Corpus(format!(
                "unsupported report schema version {}",
                report.schema_version
            )));
        }
        Ok(report)
    }
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the Hasse diagram of a ranking as DOT.
///
/// Each equivalence class is one node labelled with its sets; each edge runs
/// from the worse class to the better one.
pub fn emit_dot(r: &MaterializedRanking) -> String {
    let mut out = String::from("digraph ranking {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, class) in r.classes.iter().enumerate() {
        let label = class
            .iter()
            .map(|e| r.framework.format_set(e))
            .collect::<Vec<_>>()
            .join("\\n");
        let style = if r.maximal.contains(&i) { ", style=bold" } else { "" };
        writeln!(out, "  c{i} [label=\"{}\"{style}];", escape(&label)).expect("string write");
    }
    let mut edges = r.edges.clone();
    edges.sort();
    for (worse, better) in edges {
        writeln!(out, "  c{worse} -> c{better};").expect("string write");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Ranker;
    use crate::fixtures;

    #[test]
    fn report_round_trips() {
        let f = fixtures::f5();
        let m = Ranker::new(f, "r-co".parse().unwrap()).materialize(None).unwrap();
        let report = RankingReport::from_ranking(&m);
        assert_eq!(RankingReport::from_json(&report.to_json()).unwrap(), report);
        assert_eq!(report.spec, "r-co");
    }

    #[test]
    fn unknown_schema_is_rejected() {
        let f = fixtures::f8();
        let m = Ranker::new(f, "r-ad".parse().unwrap()).materialize(None).unwrap();
        let mut report = RankingReport::from_ranking(&m);
        report.schema_version = 99;
        assert!(RankingReport::from_json(&report.to_json()).is_err());
    }

    #[test]
    fn single_class_has_no_edges() {
        let f = crate::Framework::from_letters(1, &[]);
        let m = Ranker::new(f, "lex:conflicts".parse().unwrap()).materialize(None).unwrap();
        let dot = emit_dot(&m);
        assert_eq!(dot.matches("label=").count(), 1);
        assert!(!dot.contains("->"));
    }

    #[test]
    fn dot_is_deterministic() {
        let f = fixtures::f13();
        let render = || emit_dot(&Ranker::new(f.clone(), "r-sst".parse().unwrap()).materialize(None).unwrap());
        assert_eq!(render(), render());
    }
}

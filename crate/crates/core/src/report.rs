//! Running one matching semantics end to end and rendering the outcome.

use std::collections::BTreeMap;
use std::fmt::{self, Write};
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, PatternGraph};
use crate::io;
use crate::locality::{self, BallStats, LocalityOptions};
use crate::oracle;
use crate::simulation::{self, build_match_result, MatchResult, SimRelation};
use crate::triple_sim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Semantics {
    Sim,
    Dual,
    Strong,
    Triple,
    TripleLocal,
    Iso,
}

impl Semantics {
    pub const ALL: [Semantics; 6] = [
        Semantics::Sim,
        Semantics::Dual,
        Semantics::Strong,
        Semantics::Triple,
        Semantics::TripleLocal,
        Semantics::Iso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Semantics::Sim => "sim",
            Semantics::Dual => "dual",
            Semantics::Strong => "strong",
            Semantics::Triple => "triple",
            Semantics::TripleLocal => "triple-local",
            Semantics::Iso => "iso",
        }
    }

    /// Whether the report carries a single global relation.
    pub fn has_relation(self) -> bool {
        matches!(self, Semantics::Sim | Semantics::Dual | Semantics::Triple)
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Semantics::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Semantics::ALL.iter().map(|m| m.name()).collect();
                format!(
                    "unknown semantics `{s}` (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeEntry {
    pub id: String,
    pub label: String,
}

/// A match result with nodes and edges in lexicographic id order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultEntry {
    pub nodes: Vec<NodeEntry>,
    pub edges: Vec<(String, String)>,
}

impl ResultEntry {
    pub fn from_result(r: &MatchResult) -> Self {
        let g = r.graph();
        let mut nodes: Vec<NodeEntry> = g
            .nodes()
            .map(|v| NodeEntry {
                id: g.id(v).to_string(),
                label: g.label(v).to_string(),
            })
            .collect();
        nodes.sort_by(|a, b| a.id.cmp(&b.id));
        let edges = r
            .edge_ids()
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        Self { nodes, edges }
    }

    pub fn node_ids(&self) -> Vec<&str> {
        self.nodes.iter().map(|n| n.id.as_str()).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub wall_us: u64,
    pub balls: u64,
    pub passes: u64,
    pub lr_checks: u64,
    pub augment_steps: u64,
    pub removals: u64,
}

impl From<BallStats> for Stats {
    fn from(s: BallStats) -> Self {
        Self {
            wall_us: 0,
            balls: s.balls,
            passes: s.passes,
            lr_checks: s.lr_checks,
            augment_steps: s.augment_steps,
            removals: s.removals,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchReport {
    pub semantics: Semantics,
    pub matched: bool,
    /// Pattern id to sorted data ids; present for the single-relation
    /// semantics when the match is nonempty.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<BTreeMap<String, Vec<String>>>,
    pub results: Vec<ResultEntry>,
    /// Pattern id to data id, one map per embedding; `iso` only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embeddings: Option<Vec<BTreeMap<String, String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<Stats>,
}

impl MatchReport {
    /// 0 for a nonempty match, 1 for an empty one.
    pub fn exit_code(&self) -> i32 {
        if self.matched {
            0
        } else {
            1
        }
    }

    pub fn without_stats(mut self) -> Self {
        self.stats = None;
        self
    }
}

fn relation_report(
    semantics: Semantics,
    q: &PatternGraph,
    g: &Graph,
    rel: Option<SimRelation>,
    stats: Stats,
) -> MatchReport {
    let (relation, results) = match rel {
        Some(rel) => (
            Some(rel.to_named(q, g)),
            vec![ResultEntry::from_result(&build_match_result(q, g, &rel))],
        ),
        None => (None, Vec::new()),
    };
    MatchReport {
        semantics,
        matched: !results.is_empty(),
        relation,
        results,
        embeddings: None,
        stats: Some(stats),
    }
}

fn list_report(semantics: Semantics, results: &[MatchResult], stats: Stats) -> MatchReport {
    MatchReport {
        semantics,
        matched: !results.is_empty(),
        relation: None,
        results: results.iter().map(ResultEntry::from_result).collect(),
        embeddings: None,
        stats: Some(stats),
    }
}

/// Evaluates `q` over `g` under `semantics`. Statistics are always filled
/// in; callers strip them with [`MatchReport::without_stats`].
pub fn run_match(
    semantics: Semantics,
    q: &PatternGraph,
    g: &Graph,
    opts: LocalityOptions,
) -> Result<MatchReport> {
    let start = Instant::now();
    let mut report = match semantics {
        Semantics::Sim | Semantics::Dual => {
            let (rel, s) = if semantics == Semantics::Sim {
                simulation::graph_simulation_with_stats(q, g)?
            } else {
                simulation::dual_simulation_with_stats(q, g)?
            };
            relation_report(semantics, q, g, rel, BallStats::from_refine(s).into())
        }
        Semantics::Triple => {
            let (rel, s) = triple_sim::triple_relation_with_stats(q, g);
            relation_report(semantics, q, g, rel, BallStats::from_tsim(s).into())
        }
        Semantics::Strong => {
            let (results, s) = simulation::strong_simulation_with_stats(q, g, opts)?;
            list_report(semantics, &results, s.into())
        }
        Semantics::TripleLocal => {
            let (results, s) = locality::match_plus_with_stats(q, g, opts);
            list_report(semantics, &results, s.into())
        }
        Semantics::Iso => {
            let embs = oracle::enumerate_isomorphisms(q, g)?;
            let mut unique = BTreeMap::new();
            for e in &embs {
                let image = e.image(q, g);
                unique.entry(image.canonical_key()).or_insert(image);
            }
            let images: Vec<MatchResult> = unique.into_values().collect();
            let mut named: Vec<_> = embs.iter().map(|e| e.to_named(q, g)).collect();
            named.sort();
            let mut r = list_report(semantics, &images, Stats::default());
            r.embeddings = Some(named);
            r
        }
    };
    if let Some(stats) = report.stats.as_mut() {
        stats.wall_us = start.elapsed().as_micros() as u64;
    }
    Ok(report)
}

/// [`run_match`] on files, with the format picked by extension.
pub fn run_match_files(
    semantics: Semantics,
    pattern: impl AsRef<Path>,
    data: impl AsRef<Path>,
    opts: LocalityOptions,
) -> Result<MatchReport> {
    let q = io::read_pattern(pattern)?;
    let g = io::read_graph(data)?;
    run_match(semantics, &q, &g, opts)
}

pub fn to_json(report: &MatchReport) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

pub fn from_json(text: &str) -> Result<MatchReport, Error> {
    Ok(serde_json::from_str(text)?)
}

pub fn to_table(report: &MatchReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "semantics  {}", report.semantics);
    let _ = writeln!(
        out,
        "matched    {}",
        if report.matched { "yes" } else { "no" }
    );
    if let Some(rel) = &report.relation {
        let width = rel.keys().map(String::len).max().unwrap_or(0);
        out.push_str("\nrelation\n");
        for (u, vs) in rel {
            let _ = writeln!(out, "  {u:<width$}  {}", vs.join(" "));
        }
    }
    if let Some(embs) = &report.embeddings {
        let _ = writeln!(out, "\nembeddings {}", embs.len());
        for (i, e) in embs.iter().enumerate() {
            let pairs: Vec<String> = e.iter().map(|(u, v)| format!("{u}->{v}")).collect();
            let _ = writeln!(out, "  #{:<3} {}", i + 1, pairs.join(" "));
        }
    }
    let _ = writeln!(out, "\nresults    {}", report.results.len());
    for (i, r) in report.results.iter().enumerate() {
        let _ = writeln!(out, "  #{} nodes  {}", i + 1, r.node_ids().join(" "));
        let edges: Vec<String> = r.edges.iter().map(|(a, b)| format!("{a}->{b}")).collect();
        let _ = writeln!(out, "     edges  {}", edges.join(" "));
    }
    if let Some(s) = &report.stats {
        let _ = writeln!(
            out,
            "\nstats      wall_us={} balls={} passes={} lr_checks={} augment_steps={} removals={}",
            s.wall_us, s.balls, s.passes, s.lr_checks, s.augment_steps, s.removals
        );
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One `digraph` per result.
pub fn to_dot(report: &MatchReport) -> String {
    let mut out = String::new();
    for (i, r) in report.results.iter().enumerate() {
        let _ = writeln!(out, "digraph match_{} {{", i + 1);
        for n in &r.nodes {
            let _ = writeln!(
                out,
                "  {} [label={}];",
                quote(&n.id),
                quote(&format!("{}:{}", n.id, n.label))
            );
        }
        for (a, b) in &r.edges {
            let _ = writeln!(out, "  {} -> {};", quote(a), quote(b));
        }
        out.push_str("}\n");
    }
    out
}

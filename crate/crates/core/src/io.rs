//! Reading and writing graphs.
//!
//! Text format, one declaration per line, `#` starts a comment:
//!
//! ```text
//! node <id> <label>
//! edge <src> <dst> [>=<p>]
//! ```
//!
//! Declarations may appear in any order; nodes are indexed in the order they
//! are declared. The `>=p` suffix (also written `≥p`) is accepted only in
//! pattern files. JSON files use
//! `{"nodes":[{"id","label"}],"edges":[{"src","dst","gte"?}]}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, PatternGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    /// `.json` selects JSON; anything else is read as text.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Text,
        }
    }
}

/// Graph plus the quantifier annotations found while parsing.
struct Parsed {
    graph: Graph,
    quantifiers: Vec<((usize, usize), u32)>,
}

struct EdgeLine<'a> {
    line: usize,
    src: &'a str,
    dst: &'a str,
    quantifier: Option<u32>,
}

fn parse_quantifier(token: &str, line: usize) -> Result<u32> {
    let unsupported = |semantics| Error::UnsupportedQuantifier {
        line,
        token: token.to_string(),
        semantics,
    };
    let body = token.strip_prefix(">=").or_else(|| token.strip_prefix('≥'));
    if let Some(count) = body {
        if count.ends_with('%') {
            return Err(unsupported("ratio aggregate"));
        }
        let p: u32 = count.parse().map_err(|_| Error::Syntax {
            line,
            message: format!("malformed quantifier `{token}`"),
        })?;
        if p == 0 {
            return Err(Error::Syntax {
                line,
                message: format!("quantifier `{token}` must be at least 1"),
            });
        }
        return Ok(p);
    }
    match token {
        "=0" => Err(unsupported("negation")),
        "=100%" => Err(unsupported("universal quantification")),
        t if t.starts_with('=') && t.ends_with('%') => Err(unsupported("ratio aggregate")),
        t if t.starts_with('=') => Err(unsupported("exact count")),
        _ => Err(Error::Syntax {
            line,
            message: format!("unexpected token `{token}`"),
        }),
    }
}

fn parse_text(text: &str, allow_quantifiers: bool) -> Result<Parsed> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["node", id, label] => nodes.push((line, *id, *label)),
            ["edge", src, dst] => edges.push(EdgeLine {
                line,
                src,
                dst,
                quantifier: None,
            }),
            ["edge", src, dst, q] => {
                let p = parse_quantifier(q, line)?;
                if !allow_quantifiers {
                    return Err(Error::Syntax {
                        line,
                        message: format!("quantifier `{q}` is only allowed in pattern files"),
                    });
                }
                edges.push(EdgeLine {
                    line,
                    src,
                    dst,
                    quantifier: Some(p),
                });
            }
            ["node", ..] => {
                return Err(Error::Syntax {
                    line,
                    message: "expected `node <id> <label>`".into(),
                })
            }
            ["edge", ..] => {
                return Err(Error::Syntax {
                    line,
                    message: "expected `edge <src> <dst> [>=p]`".into(),
                })
            }
            [other, ..] => {
                return Err(Error::Syntax {
                    line,
                    message: format!("unknown declaration `{other}`"),
                })
            }
        }
    }

    let mut b = GraphBuilder::with_capacity(nodes.len());
    for (line, id, label) in nodes {
        b.add_node(id, label).map_err(|e| Error::Syntax {
            line,
            message: e.to_string(),
        })?;
    }
    for e in &edges {
        b.add_edge(e.src, e.dst).map_err(|err| Error::Syntax {
            line: e.line,
            message: err.to_string(),
        })?;
    }
    let graph = b.build();
    let quantifiers = edges
        .iter()
        .filter_map(|e| {
            e.quantifier.map(|p| {
                (
                    (
                        graph.index_of(e.src).unwrap(),
                        graph.index_of(e.dst).unwrap(),
                    ),
                    p,
                )
            })
        })
        .collect();
    Ok(Parsed { graph, quantifiers })
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphDoc {
    nodes: Vec<NodeDoc>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct NodeDoc {
    id: String,
    label: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeDoc {
    src: String,
    dst: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gte: Option<u32>,
}

fn parse_json(text: &str, allow_quantifiers: bool) -> Result<Parsed> {
    let doc: GraphDoc = serde_json::from_str(text)?;
    let mut b = GraphBuilder::with_capacity(doc.nodes.len());
    for n in &doc.nodes {
        b.add_node(&n.id, &n.label)?;
    }
    for e in &doc.edges {
        b.add_edge(&e.src, &e.dst)?;
    }
    let graph = b.build();
    let mut quantifiers = Vec::new();
    for e in &doc.edges {
        if let Some(p) = e.gte {
            if !allow_quantifiers {
                return Err(Error::InvalidQuantifier {
                    src: e.src.clone(),
                    dst: e.dst.clone(),
                    reason: "quantifiers are only allowed in pattern files".into(),
                });
            }
            quantifiers.push(((graph.node(&e.src)?, graph.node(&e.dst)?), p));
        }
    }
    Ok(Parsed { graph, quantifiers })
}

fn parse(text: &str, format: Format, allow_quantifiers: bool) -> Result<Parsed> {
    match format {
        Format::Text => parse_text(text, allow_quantifiers),
        Format::Json => parse_json(text, allow_quantifiers),
    }
}

pub fn parse_graph(text: &str, format: Format) -> Result<Graph> {
    Ok(parse(text, format, false)?.graph)
}

/// Parses a pattern and checks that it is nonempty and connected and that
/// every quantifier is a positive count.
pub fn parse_pattern(text: &str, format: Format) -> Result<PatternGraph> {
    let p = parse(text, format, true)?;
    PatternGraph::with_quantifiers(p.graph, p.quantifiers)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    parse_graph(&fs::read_to_string(path)?, Format::from_path(path))
}

pub fn read_pattern(path: impl AsRef<Path>) -> Result<PatternGraph> {
    let path = path.as_ref();
    parse_pattern(&fs::read_to_string(path)?, Format::from_path(path))
}

fn write_text(g: &Graph, quantifier: impl Fn(usize, usize) -> u32) -> String {
    let mut out = String::new();
    for v in g.nodes() {
        out.push_str(&format!("node {} {}\n", g.id(v), g.label(v)));
    }
    for &(a, b) in g.edges() {
        match quantifier(a, b) {
            1 => out.push_str(&format!("edge {} {}\n", g.id(a), g.id(b))),
            p => out.push_str(&format!("edge {} {} >={p}\n", g.id(a), g.id(b))),
        }
    }
    out
}

/// Text form of `g`. Ids and labels must not contain whitespace or `#`.
pub fn graph_to_text(g: &Graph) -> String {
    write_text(g, |_, _| 1)
}

pub fn pattern_to_text(q: &PatternGraph) -> String {
    write_text(q, |a, b| q.quantifier(a, b))
}

fn doc(g: &Graph, quantifier: impl Fn(usize, usize) -> Option<u32>) -> GraphDoc {
    GraphDoc {
        nodes: g
            .nodes()
            .map(|v| NodeDoc {
                id: g.id(v).to_string(),
                label: g.label(v).to_string(),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|&(a, b)| EdgeDoc {
                src: g.id(a).to_string(),
                dst: g.id(b).to_string(),
                gte: quantifier(a, b),
            })
            .collect(),
    }
}

pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&doc(g, |_, _| None)).expect("graph documents serialize")
}

pub fn pattern_to_json(q: &PatternGraph) -> String {
    let d = doc(q, |a, b| Some(q.quantifier(a, b)).filter(|&p| p != 1));
    serde_json::to_string_pretty(&d).expect("graph documents serialize")
}

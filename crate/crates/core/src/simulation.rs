//! Graph simulation, dual simulation and strong simulation, plus the match
//! relation and match result types shared by every semantics.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{potential_matches, Graph, GraphBuilder, PatternGraph};
use crate::locality::{self, BallStats, LocalityOptions};
use crate::nodeset::NodeSet;

/// Candidate sets `sim(u)` for every pattern node `u`, indexed by pattern
/// node; members are data node indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimRelation {
    sets: Vec<NodeSet>,
}

impl SimRelation {
    pub fn new(sets: Vec<NodeSet>) -> Self {
        Self { sets }
    }

    /// Label-based candidates: `sim(u) = { v : label(v) = label(u) }`.
    pub fn potential(q: &Graph, g: &Graph) -> Self {
        Self::new(q.nodes().map(|u| potential_matches(q, g, u)).collect())
    }

    /// Builds a relation from `(pattern id, data id)` pairs.
    pub fn from_named_pairs(q: &Graph, g: &Graph, pairs: &[(&str, &str)]) -> Result<Self> {
        let mut sets = vec![NodeSet::with_universe(g.node_count()); q.node_count()];
        for (u, v) in pairs {
            sets[q.node(u)?].insert(g.node(v)?);
        }
        Ok(Self::new(sets))
    }

    pub fn get(&self, u: usize) -> &NodeSet {
        &self.sets[u]
    }

    pub(crate) fn get_mut(&mut self, u: usize) -> &mut NodeSet {
        &mut self.sets[u]
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.sets[u].contains(v)
    }

    pub fn pattern_len(&self) -> usize {
        self.sets.len()
    }

    /// Every pattern node keeps at least one candidate.
    pub fn is_total(&self) -> bool {
        self.sets.iter().all(|s| !s.is_empty())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.sets
            .iter()
            .enumerate()
            .flat_map(|(u, s)| s.iter().map(move |v| (u, v)))
    }

    pub fn pair_count(&self) -> usize {
        self.sets.iter().map(NodeSet::len).sum()
    }

    /// Pointwise inclusion `sim(u) ⊆ other.sim(u)`.
    pub fn is_subset_of(&self, other: &SimRelation) -> bool {
        self.sets.len() == other.sets.len()
            && self
                .sets
                .iter()
                .zip(&other.sets)
                .all(|(a, b)| a.is_subset(b))
    }

    /// Pattern id to sorted data ids.
    pub fn to_named(&self, q: &Graph, g: &Graph) -> BTreeMap<String, Vec<String>> {
        q.nodes()
            .map(|u| {
                let mut ids: Vec<String> =
                    self.sets[u].iter().map(|v| g.id(v).to_string()).collect();
                ids.sort();
                (q.id(u).to_string(), ids)
            })
            .collect()
    }

    /// Sorted `(pattern id, data id)` pairs.
    pub fn named_pairs(&self, q: &Graph, g: &Graph) -> Vec<(String, String)> {
        let mut pairs: Vec<_> = self
            .pairs()
            .map(|(u, v)| (q.id(u).to_string(), g.id(v).to_string()))
            .collect();
        pairs.sort();
        pairs
    }

    /// Re-keys a relation computed on `from` (a subgraph of `to` sharing
    /// node ids) onto `to`'s indices.
    pub fn lift(&self, from: &Graph, to: &Graph) -> SimRelation {
        SimRelation::new(
            self.sets
                .iter()
                .map(|s| {
                    let mut lifted = NodeSet::with_universe(to.node_count());
                    for v in s.iter() {
                        lifted.insert(to.index_of(from.id(v)).expect("subgraph id"));
                    }
                    lifted
                })
                .collect(),
        )
    }
}

/// A subgraph of the data graph induced by a match relation.
#[derive(Clone, Debug, Default)]
pub struct MatchResult {
    graph: Graph,
}

impl MatchResult {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_graph(graph: Graph) -> Self {
        Self { graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    /// Node ids in lexicographic order.
    pub fn node_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.graph.nodes().map(|v| self.graph.id(v)).collect();
        ids.sort_unstable();
        ids
    }

    /// Edges as id pairs in lexicographic order.
    pub fn edge_ids(&self) -> Vec<(&str, &str)> {
        let mut edges: Vec<_> = self
            .graph
            .edges()
            .iter()
            .map(|&(a, b)| (self.graph.id(a), self.graph.id(b)))
            .collect();
        edges.sort_unstable();
        edges
    }

    pub fn contains_node(&self, id: &str) -> bool {
        self.graph.index_of(id).is_some()
    }

    /// Canonical text form used for ordering and de-duplication.
    pub fn canonical_key(&self) -> String {
        let mut key = String::new();
        for id in self.node_ids() {
            key.push_str(id);
            key.push('\u{1f}');
        }
        key.push('\u{1e}');
        for (a, b) in self.edge_ids() {
            key.push_str(a);
            key.push('\u{1f}');
            key.push_str(b);
            key.push('\u{1d}');
        }
        key
    }

    /// Every node (with its label) and every edge also occurs in `g`.
    pub fn is_subgraph_of(&self, g: &Graph) -> bool {
        let nodes = self.graph.nodes().all(|v| {
            g.index_of(self.graph.id(v))
                .is_some_and(|w| g.label(w) == self.graph.label(v))
        });
        nodes
            && self.graph.edges().iter().all(|&(a, b)| {
                match (g.index_of(self.graph.id(a)), g.index_of(self.graph.id(b))) {
                    (Some(a), Some(b)) => g.has_edge(a, b),
                    _ => false,
                }
            })
    }

    /// The weakly connected component containing `id`, if present.
    pub fn component_of(&self, id: &str) -> Option<MatchResult> {
        let start = self.graph.index_of(id)?;
        let mut keep: Vec<usize> = self
            .graph
            .bfs_distances(start)
            .iter()
            .enumerate()
            .filter_map(|(v, d)| d.map(|_| v))
            .collect();
        keep.sort_unstable();
        Some(MatchResult::from_graph(self.graph.induced_subgraph(&keep)))
    }
}

impl PartialEq for MatchResult {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}

impl Eq for MatchResult {}

/// Builds the match result of relation `s`: the nodes in the image of `s`
/// and every data edge `(v, v')` witnessed by a pattern edge `(u, u')` with
/// `v ∈ sim(u)` and `v' ∈ sim(u')`.
pub fn build_match_result(q: &Graph, g: &Graph, s: &SimRelation) -> MatchResult {
    let mut in_image = vec![false; g.node_count()];
    for (_, v) in s.pairs() {
        in_image[v] = true;
    }
    let mut local = vec![usize::MAX; g.node_count()];
    let mut builder = GraphBuilder::with_capacity(in_image.iter().filter(|&&b| b).count());
    for v in g.nodes().filter(|&v| in_image[v]) {
        local[v] = builder
            .add_node(g.id(v), g.label(v))
            .expect("data ids are unique");
    }
    for &(u, u2) in q.edges() {
        for v in s.get(u).iter() {
            for &w in g.children(v) {
                if s.contains(u2, w) {
                    builder
                        .add_edge_by_index(local[v], local[w])
                        .expect("both endpoints are in the image");
                }
            }
        }
    }
    MatchResult::from_graph(builder.build())
}

/// Counters kept by the refinement loops.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct RefineStats {
    pub removals: u64,
    pub visits: u64,
}

/// Counter-based refinement shared by graph and dual simulation.
///
/// `child_count[u][v]` is the number of children of `v` in `sim(u)`, and
/// `parent_count[u][v]` the number of parents of `v` in `sim(u)`. A worklist
/// of pattern nodes is seeded in declaration order; whenever `sim(u)`
/// shrinks, the pattern neighbors of `u` whose checks read `sim(u)` are
/// queued again.
fn refine(q: &Graph, g: &Graph, dual: bool) -> (Option<SimRelation>, RefineStats) {
    let mut stats = RefineStats::default();
    let mut rel = SimRelation::potential(q, g);
    if !rel.is_total() {
        return (None, stats);
    }
    let count = |neighbors: fn(&Graph, usize) -> &[usize], rel: &SimRelation| -> Vec<Vec<u32>> {
        q.nodes()
            .map(|u| {
                let mut c = vec![0u32; g.node_count()];
                for v in rel.get(u).iter() {
                    for &w in neighbors(g, v) {
                        c[w] += 1;
                    }
                }
                c
            })
            .collect()
    };
    // child_count[u][w] counts children of w in sim(u), i.e. w is a parent of v.
    let mut child_count = count(Graph::parents, &rel);
    let mut parent_count = if dual {
        count(Graph::children, &rel)
    } else {
        Vec::new()
    };

    let mut queue: VecDeque<usize> = q.nodes().collect();
    let mut queued = vec![true; q.node_count()];
    while let Some(u) = queue.pop_front() {
        queued[u] = false;
        stats.visits += 1;
        let mut shrunk = false;
        for v in rel.get(u).to_vec() {
            let child_ok = q.children(u).iter().all(|&c| child_count[c][v] > 0);
            let parent_ok = !dual || q.parents(u).iter().all(|&p| parent_count[p][v] > 0);
            if child_ok && parent_ok {
                continue;
            }
            rel.get_mut(u).remove(v);
            stats.removals += 1;
            shrunk = true;
            for &w in g.parents(v) {
                child_count[u][w] -= 1;
            }
            if dual {
                for &w in g.children(v) {
                    parent_count[u][w] -= 1;
                }
            }
        }
        if !shrunk {
            continue;
        }
        if rel.get(u).is_empty() {
            return (None, stats);
        }
        let affected = q
            .parents(u)
            .iter()
            .chain(if dual { q.children(u) } else { &[] });
        for &w in affected {
            if !queued[w] {
                queued[w] = true;
                queue.push_back(w);
            }
        }
    }
    (Some(rel), stats)
}

fn require_plain(q: &PatternGraph, what: &'static str) -> Result<()> {
    if q.is_quantified() {
        Err(Error::QuantifiedPattern(what))
    } else {
        Ok(())
    }
}

/// Maximum graph-simulation relation, or `None` when some pattern node has
/// no match.
pub fn graph_simulation(q: &PatternGraph, g: &Graph) -> Result<Option<SimRelation>> {
    require_plain(q, "graph simulation")?;
    Ok(refine(q, g, false).0)
}

pub fn graph_simulation_with_stats(
    q: &PatternGraph,
    g: &Graph,
) -> Result<(Option<SimRelation>, RefineStats)> {
    require_plain(q, "graph simulation")?;
    Ok(refine(q, g, false))
}

/// Maximum dual-simulation relation, or `None` when some pattern node has
/// no match.
pub fn dual_simulation(q: &PatternGraph, g: &Graph) -> Result<Option<SimRelation>> {
    require_plain(q, "dual simulation")?;
    Ok(refine(q, g, true).0)
}

pub fn dual_simulation_with_stats(
    q: &PatternGraph,
    g: &Graph,
) -> Result<(Option<SimRelation>, RefineStats)> {
    require_plain(q, "dual simulation")?;
    Ok(refine(q, g, true))
}

/// Strong simulation: dual simulation inside every ball of radius `d_Q`,
/// keeping the match component that contains the ball center. Results are
/// de-duplicated and sorted by canonical form.
pub fn strong_simulation(q: &PatternGraph, g: &Graph) -> Result<Vec<MatchResult>> {
    strong_simulation_with(q, g, LocalityOptions::default())
}

pub fn strong_simulation_with(
    q: &PatternGraph,
    g: &Graph,
    opts: LocalityOptions,
) -> Result<Vec<MatchResult>> {
    Ok(strong_simulation_with_stats(q, g, opts)?.0)
}

pub fn strong_simulation_with_stats(
    q: &PatternGraph,
    g: &Graph,
    opts: LocalityOptions,
) -> Result<(Vec<MatchResult>, BallStats)> {
    require_plain(q, "strong simulation")?;
    Ok(locality::local_matches(q, g, opts, |q, ball| {
        let (rel, stats) = refine(q, ball, true);
        (rel, BallStats::from_refine(stats))
    }))
}

//! Directed node-labeled graphs and quantified pattern graphs.
//!
//! Nodes carry an opaque string id and a single label. Internally every node
//! is addressed by a dense index assigned in declaration order; all external
//! output maps indices back to the original ids.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::nodeset::NodeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Child,
    Parent,
}

#[derive(Clone, Debug, Default)]
pub struct Graph {
    ids: Vec<String>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    edge_list: Vec<(usize, usize)>,
    edge_set: HashSet<(usize, usize)>,
    by_label: HashMap<String, Vec<usize>>,
}

impl Graph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::default()
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_list.len()
    }

    /// `|V| + |E|`.
    pub fn size(&self) -> usize {
        self.node_count() + self.edge_count()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.ids.len()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Like [`Graph::index_of`], but an unknown id is an error.
    pub fn node(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn neighbors(&self, v: usize, direction: Direction) -> &[usize] {
        match direction {
            Direction::Child => &self.children[v],
            Direction::Parent => &self.parents[v],
        }
    }

    /// Out- or in-neighbors of the node named `id`, in edge insertion order.
    pub fn neighbors_of(&self, id: &str, direction: Direction) -> Result<Vec<&str>> {
        let v = self.node(id)?;
        Ok(self
            .neighbors(v, direction)
            .iter()
            .map(|&w| self.id(w))
            .collect())
    }

    #[inline]
    pub fn has_edge(&self, src: usize, dst: usize) -> bool {
        self.edge_set.contains(&(src, dst))
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edge_list
    }

    pub fn nodes_with_label(&self, label: &str) -> &[usize] {
        self.by_label.get(label).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.by_label.contains_key(label)
    }

    /// Undirected BFS distances from `source`; `None` marks unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap() + 1;
            for &w in self.children[v].iter().chain(&self.parents[v]) {
                if dist[w].is_none() {
                    dist[w] = Some(d);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Nodes within undirected distance `radius` of `source`, in BFS order.
    pub fn nodes_within(&self, source: usize, radius: usize) -> Vec<usize> {
        let mut seen = HashMap::from([(source, 0usize)]);
        let mut order = vec![source];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            let d = seen[&v];
            if d == radius {
                continue;
            }
            for &w in self.children[v].iter().chain(&self.parents[v]) {
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(w) {
                    e.insert(d + 1);
                    order.push(w);
                }
            }
        }
        order
    }

    pub fn undirected_distance(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return Some(0);
        }
        self.bfs_distances(a)[b]
    }

    pub fn distance(&self, a: &str, b: &str) -> Result<Option<usize>> {
        let (a, b) = (self.node(a)?, self.node(b)?);
        Ok(self.undirected_distance(a, b))
    }

    /// Weak connectivity. The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.is_empty() || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Longest shortest undirected distance over all node pairs.
    pub fn diameter(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut best = 0;
        for v in self.nodes() {
            for d in self.bfs_distances(v) {
                best = best.max(d.ok_or(Error::Disconnected)?);
            }
        }
        Ok(best)
    }

    /// Subgraph induced by `keep`, which must hold distinct indices of `self`.
    /// Node order in the result follows `keep`; ids and labels are preserved.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut local = HashMap::with_capacity(keep.len());
        let mut builder = GraphBuilder::with_capacity(keep.len());
        for &v in keep {
            let idx = builder.push_node_unchecked(self.id(v), self.label(v));
            local.insert(v, idx);
        }
        for &v in keep {
            for &w in &self.children[v] {
                if let Some(&lw) = local.get(&w) {
                    builder.push_edge_unchecked(local[&v], lw);
                }
            }
        }
        builder.build()
    }
}

impl PartialEq for Graph {
    /// Same ids, labels, and edges; declaration order is ignored.
    fn eq(&self, other: &Self) -> bool {
        if self.node_count() != other.node_count() || self.edge_count() != other.edge_count() {
            return false;
        }
        let nodes_match = self.nodes().all(|v| {
            other
                .index_of(self.id(v))
                .is_some_and(|w| other.label(w) == self.label(v))
        });
        nodes_match
            && self.edge_list.iter().all(|&(a, b)| {
                let (a, b) = (other.index_of(self.id(a)), other.index_of(self.id(b)));
                matches!((a, b), (Some(a), Some(b)) if other.has_edge(a, b))
            })
    }
}

impl Eq for Graph {}

#[derive(Debug, Default)]
pub struct GraphBuilder {
    graph: Graph,
}

impl GraphBuilder {
    pub fn with_capacity(nodes: usize) -> Self {
        let mut graph = Graph::default();
        graph.ids.reserve(nodes);
        graph.labels.reserve(nodes);
        Self { graph }
    }

    pub fn add_node(&mut self, id: &str, label: &str) -> Result<usize> {
        if self.graph.index.contains_key(id) {
            return Err(Error::DuplicateNode(id.to_string()));
        }
        Ok(self.push_node_unchecked(id, label))
    }

    /// Adds `src -> dst` by id. Returns `false` if the edge already existed.
    pub fn add_edge(&mut self, src: &str, dst: &str) -> Result<bool> {
        match (self.graph.index_of(src), self.graph.index_of(dst)) {
            (Some(a), Some(b)) => Ok(self.push_edge_unchecked(a, b)),
            _ => Err(Error::DanglingEdge {
                src: src.to_string(),
                dst: dst.to_string(),
            }),
        }
    }

    pub fn add_edge_by_index(&mut self, src: usize, dst: usize) -> Result<bool> {
        let n = self.graph.node_count();
        if src >= n || dst >= n {
            return Err(Error::DanglingEdge {
                src: src.to_string(),
                dst: dst.to_string(),
            });
        }
        Ok(self.push_edge_unchecked(src, dst))
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    fn push_node_unchecked(&mut self, id: &str, label: &str) -> usize {
        let g = &mut self.graph;
        let idx = g.ids.len();
        g.ids.push(id.to_string());
        g.labels.push(label.to_string());
        g.index.insert(id.to_string(), idx);
        g.children.push(Vec::new());
        g.parents.push(Vec::new());
        g.by_label.entry(label.to_string()).or_default().push(idx);
        idx
    }

    fn push_edge_unchecked(&mut self, a: usize, b: usize) -> bool {
        let g = &mut self.graph;
        if !g.edge_set.insert((a, b)) {
            return false;
        }
        g.edge_list.push((a, b));
        g.children[a].push(b);
        g.parents[b].push(a);
        true
    }

    pub fn build(self) -> Graph {
        self.graph
    }
}

/// A connected pattern graph with optional `>= p` counting quantifiers on
/// its edges. An edge without a quantifier is existential (`p = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternGraph {
    graph: Graph,
    quantifiers: HashMap<(usize, usize), u32>,
}

impl PatternGraph {
    pub fn new(graph: Graph) -> Result<Self> {
        Self::with_quantifiers(graph, std::iter::empty())
    }

    pub fn with_quantifiers(
        graph: Graph,
        quantifiers: impl IntoIterator<Item = ((usize, usize), u32)>,
    ) -> Result<Self> {
        if graph.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut map = HashMap::new();
        for ((src, dst), p) in quantifiers {
            let describe = |reason: &str| Error::InvalidQuantifier {
                src: graph
                    .ids
                    .get(src)
                    .cloned()
                    .unwrap_or_else(|| src.to_string()),
                dst: graph
                    .ids
                    .get(dst)
                    .cloned()
                    .unwrap_or_else(|| dst.to_string()),
                reason: reason.to_string(),
            };
            if src >= graph.node_count() || dst >= graph.node_count() || !graph.has_edge(src, dst) {
                return Err(describe("no such edge"));
            }
            if p == 0 {
                return Err(describe("count must be at least 1"));
            }
            if let Some(old) = map.insert((src, dst), p) {
                if old != p {
                    return Err(describe("conflicting quantifiers"));
                }
            }
        }
        // `>= 1` is the plain existential edge.
        map.retain(|_, p| *p != 1);
        Ok(Self {
            graph,
            quantifiers: map,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Quantifier count on `src -> dst`; 1 when absent.
    pub fn quantifier(&self, src: usize, dst: usize) -> u32 {
        self.quantifiers.get(&(src, dst)).copied().unwrap_or(1)
    }

    /// Edges with a quantifier `p >= 2`, in edge insertion order.
    pub fn annotated_edges(&self) -> Vec<((usize, usize), u32)> {
        self.graph
            .edges()
            .iter()
            .filter_map(|e| self.quantifiers.get(e).map(|&p| (*e, p)))
            .collect()
    }

    /// True when some edge carries a quantifier `p >= 2`.
    pub fn is_quantified(&self) -> bool {
        self.quantifiers.values().any(|&p| p >= 2)
    }

    pub fn diameter(&self) -> usize {
        self.graph
            .diameter()
            .expect("pattern graphs are nonempty and connected")
    }
}

impl std::ops::Deref for PatternGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

/// Data nodes carrying the label of pattern node `u`, in data declaration order.
pub fn potential_matches(q: &Graph, g: &Graph, u: usize) -> NodeSet {
    let mut set = NodeSet::with_universe(g.node_count());
    for &v in g.nodes_with_label(q.label(u)) {
        set.insert(v);
    }
    set
}

/// Convenience constructor used by fixtures and tests: `nodes` are
/// `(id, label)` pairs and `edges` are `(src, dst)` id pairs.
pub fn graph_from(nodes: &[(&str, &str)], edges: &[(&str, &str)]) -> Result<Graph> {
    let mut b = GraphBuilder::with_capacity(nodes.len());
    for (id, label) in nodes {
        b.add_node(id, label)?;
    }
    for (s, d) in edges {
        b.add_edge(s, d)?;
    }
    Ok(b.build())
}

/// Like [`graph_from`] for patterns; `quantified` lists `(src, dst, p)`.
pub fn pattern_from(
    nodes: &[(&str, &str)],
    edges: &[(&str, &str)],
    quantified: &[(&str, &str, u32)],
) -> Result<PatternGraph> {
    let mut all_edges = edges.to_vec();
    all_edges.extend(quantified.iter().map(|&(s, d, _)| (s, d)));
    let graph = graph_from(nodes, &all_edges)?;
    let qs = quantified
        .iter()
        .map(|&(s, d, p)| Ok(((graph.node(s)?, graph.node(d)?), p)))
        .collect::<Result<Vec<_>>>()?;
    PatternGraph::with_quantifiers(graph, qs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(ids: &[&str]) -> Graph {
        let nodes: Vec<_> = ids.iter().map(|&i| (i, "L")).collect();
        let edges: Vec<_> = ids.windows(2).map(|w| (w[0], w[1])).collect();
        graph_from(&nodes, &edges).unwrap()
    }

    #[test]
    fn neighbors_single_edge() {
        let g = graph_from(&[("a", "A"), ("b", "B")], &[("a", "b")]).unwrap();
        assert_eq!(g.neighbors_of("a", Direction::Child).unwrap(), vec!["b"]);
        assert!(g.neighbors_of("b", Direction::Child).unwrap().is_empty());
        assert_eq!(g.neighbors_of("b", Direction::Parent).unwrap(), vec!["a"]);
        assert!(matches!(
            g.neighbors_of("zz", Direction::Child),
            Err(Error::UnknownNode(_))
        ));
    }

    #[test]
    fn distances_ignore_direction() {
        let g = path(&["a", "b", "c"]);
        assert_eq!(g.distance("a", "a").unwrap(), Some(0));
        assert_eq!(g.distance("a", "c").unwrap(), Some(2));
        let rev = path(&["c", "b", "a"]);
        assert_eq!(rev.distance("a", "c").unwrap(), Some(2));
        assert!(g.distance("a", "nope").is_err());
    }

    #[test]
    fn unreachable_distance() {
        let g = graph_from(&[("a", "A"), ("b", "B")], &[]).unwrap();
        assert_eq!(g.distance("a", "b").unwrap(), None);
        assert!(matches!(g.diameter(), Err(Error::Disconnected)));
    }

    #[test]
    fn diameter_cases() {
        assert_eq!(path(&["a"]).diameter().unwrap(), 0);
        assert_eq!(path(&["a", "b", "c", "d"]).diameter().unwrap(), 3);
        assert!(matches!(
            Graph::default().diameter(),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn duplicate_edges_are_collapsed_and_self_loops_kept() {
        let mut b = Graph::builder();
        b.add_node("a", "A").unwrap();
        assert!(b.add_edge("a", "a").unwrap());
        assert!(!b.add_edge("a", "a").unwrap());
        let g = b.build();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.children(0), &[0]);
        assert_eq!(g.parents(0), &[0]);
    }

    #[test]
    fn duplicate_node_and_dangling_edge_rejected() {
        let mut b = Graph::builder();
        b.add_node("a", "A").unwrap();
        assert!(matches!(b.add_node("a", "B"), Err(Error::DuplicateNode(_))));
        assert!(matches!(
            b.add_edge("a", "x"),
            Err(Error::DanglingEdge { .. })
        ));
    }

    #[test]
    fn potential_matches_filter_by_label() {
        let q = graph_from(&[("u", "BIO")], &[]).unwrap();
        let g = graph_from(&[("d0", "SE"), ("d1", "BIO")], &[]).unwrap();
        assert_eq!(potential_matches(&q, &g, 0).to_vec(), vec![1]);
        let q2 = graph_from(&[("u", "XX")], &[]).unwrap();
        assert!(potential_matches(&q2, &g, 0).is_empty());
    }

    #[test]
    fn pattern_validation() {
        let disconnected = graph_from(&[("a", "A"), ("b", "B")], &[]).unwrap();
        assert!(matches!(
            PatternGraph::new(disconnected),
            Err(Error::Disconnected)
        ));
        assert!(matches!(
            pattern_from(&[("a", "A"), ("b", "B")], &[], &[("a", "b", 0)]),
            Err(Error::InvalidQuantifier { .. })
        ));
        let g = graph_from(&[("a", "A"), ("b", "B")], &[("a", "b")]).unwrap();
        assert!(matches!(
            PatternGraph::with_quantifiers(g, [((1, 0), 2)]),
            Err(Error::InvalidQuantifier { .. })
        ));
        let q = pattern_from(&[("a", "A"), ("b", "B")], &[], &[("a", "b", 3)]).unwrap();
        assert!(q.is_quantified());
        assert_eq!(q.quantifier(0, 1), 3);
        assert_eq!(q.quantifier(1, 0), 1);
    }

    #[test]
    fn induced_subgraph_keeps_ids() {
        let g = path(&["a", "b", "c", "d"]);
        let sub = g.induced_subgraph(&[2, 1]);
        assert_eq!(sub.id(0), "c");
        assert_eq!(sub.edge_count(), 1);
        assert!(sub.has_edge(sub.node("b").unwrap(), sub.node("c").unwrap()));
    }

    #[test]
    fn nodes_within_radius() {
        let g = path(&["a", "b", "c", "d"]);
        assert_eq!(g.nodes_within(0, 0), vec![0]);
        assert_eq!(g.nodes_within(1, 1), vec![1, 2, 0]);
        assert_eq!(g.nodes_within(0, 10).len(), 4);
    }
}

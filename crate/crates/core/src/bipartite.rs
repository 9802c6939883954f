//! Bipartite graphs and maximum matching (Hopcroft–Karp).
//!
//! Left nodes stand for pattern-side entries and right nodes for data-side
//! entries. Both sides are addressed by dense indices in insertion order,
//! which also fixes the tie-breaking of the matching algorithm.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BipartiteGraph {
    adj: Vec<Vec<usize>>,
    right_len: usize,
    edges: HashSet<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_sizes(left: usize, right: usize) -> Self {
        Self {
            adj: vec![Vec::new(); left],
            right_len: right,
            edges: HashSet::new(),
        }
    }

    pub fn add_left(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_right(&mut self) -> usize {
        self.right_len += 1;
        self.right_len - 1
    }

    /// Duplicate edges are ignored. Panics on out-of-range endpoints.
    pub fn add_edge(&mut self, x: usize, y: usize) {
        assert!(
            x < self.adj.len() && y < self.right_len,
            "edge endpoint out of range"
        );
        if self.edges.insert((x, y)) {
            self.adj[x].push(y);
        }
    }

    pub fn left_len(&self) -> usize {
        self.adj.len()
    }

    pub fn right_len(&self) -> usize {
        self.right_len
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adj[x]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x, y))
    }

    /// Edges grouped by left node, each group in insertion order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    /// Builds a graph from named sides. Unknown names in `edges` panic.
    pub fn from_named(left: &[&str], right: &[&str], edges: &[(&str, &str)]) -> Self {
        let lpos: HashMap<_, _> = left.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let rpos: HashMap<_, _> = right.iter().enumerate().map(|(i, n)| (*n, i)).collect();
        let mut bg = Self::with_sizes(left.len(), right.len());
        for (x, y) in edges {
            bg.add_edge(lpos[x], rpos[y]);
        }
        bg
    }

    /// Graphviz rendering; left nodes on one rank, right nodes on another.
    pub fn to_dot(
        &self,
        left_names: &[String],
        right_names: &[String],
        matching: Option<&Matching>,
    ) -> String {
        let lname = |x: usize| {
            left_names
                .get(x)
                .cloned()
                .unwrap_or_else(|| format!("x{x}"))
        };
        let rname = |y: usize| {
            right_names
                .get(y)
                .cloned()
                .unwrap_or_else(|| format!("y{y}"))
        };
        let matched: HashSet<(usize, usize)> = matching
            .map(|m| m.pairs().iter().copied().collect())
            .unwrap_or_default();
        let mut out = String::from("graph bipartite {\n  rankdir=LR;\n");
        out.push_str("  { rank=same;");
        for x in 0..self.left_len() {
            let _ = write!(out, " \"L:{}\";", lname(x));
        }
        out.push_str(" }\n  { rank=same;");
        for y in 0..self.right_len() {
            let _ = write!(out, " \"R:{}\";", rname(y));
        }
        out.push_str(" }\n");
        for (x, y) in self.edges() {
            let style = if matched.contains(&(x, y)) {
                " [style=bold]"
            } else {
                ""
            };
            let _ = writeln!(out, "  \"L:{}\" -- \"R:{}\"{style};", lname(x), rname(y));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `(left, right)` pairs sorted by left index.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Every pair is a host edge and no endpoint is used twice.
    pub fn is_valid_for(&self, bg: &BipartiteGraph) -> bool {
        let mut xs = HashSet::new();
        let mut ys = HashSet::new();
        self.pairs
            .iter()
            .all(|&(x, y)| bg.has_edge(x, y) && xs.insert(x) && ys.insert(y))
    }
}

const FREE: usize = usize::MAX;

struct HopcroftKarp<'a> {
    bg: &'a BipartiteGraph,
    mate_left: Vec<usize>,
    mate_right: Vec<usize>,
    layer: Vec<usize>,
    steps: u64,
}

impl<'a> HopcroftKarp<'a> {
    fn new(bg: &'a BipartiteGraph) -> Self {
        Self {
            bg,
            mate_left: vec![FREE; bg.left_len()],
            mate_right: vec![FREE; bg.right_len()],
            layer: vec![usize::MAX; bg.left_len()],
            steps: 0,
        }
    }

    /// Layers left nodes by alternating BFS from the free ones. Returns
    /// whether some free right node is reachable.
    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for x in 0..self.bg.left_len() {
            if self.mate_left[x] == FREE {
                self.layer[x] = 0;
                queue.push_back(x);
            } else {
                self.layer[x] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(x) = queue.pop_front() {
            for &y in self.bg.neighbors(x) {
                self.steps += 1;
                let next = self.mate_right[y];
                if next == FREE {
                    found = true;
                } else if self.layer[next] == usize::MAX {
                    self.layer[next] = self.layer[x] + 1;
                    queue.push_back(next);
                }
            }
        }
        found
    }

    fn dfs(&mut self, x: usize) -> bool {
        let bg = self.bg;
        for &y in bg.neighbors(x) {
            self.steps += 1;
            let next = self.mate_right[y];
            let advance = next == FREE
                || (self.layer[next] == self.layer[x].wrapping_add(1) && self.dfs(next));
            if advance {
                self.mate_left[x] = y;
                self.mate_right[y] = x;
                return true;
            }
        }
        self.layer[x] = usize::MAX;
        false
    }

    fn run(mut self) -> (Matching, u64) {
        while self.bfs() {
            for x in 0..self.bg.left_len() {
                if self.mate_left[x] == FREE {
                    self.dfs(x);
                }
            }
        }
        let pairs = self
            .mate_left
            .iter()
            .enumerate()
            .filter(|(_, &y)| y != FREE)
            .map(|(x, &y)| (x, y))
            .collect();
        (Matching { pairs }, self.steps)
    }
}

pub fn maximum_matching(bg: &BipartiteGraph) -> Matching {
    HopcroftKarp::new(bg).run().0
}

/// [`maximum_matching`] that also reports the number of edge inspections
/// performed during the BFS layering and augmenting searches.
pub fn maximum_matching_counted(bg: &BipartiteGraph) -> (Matching, u64) {
    HopcroftKarp::new(bg).run()
}

/// Whether some matching covers every left node. An empty left side is
/// covered vacuously.
pub fn has_complete_matching(bg: &BipartiteGraph) -> bool {
    complete_matching_counted(bg).0
}

pub(crate) fn complete_matching_counted(bg: &BipartiteGraph) -> (bool, u64) {
    if bg.left_len() == 0 {
        return (true, 0);
    }
    if bg.right_len() < bg.left_len() {
        return (false, 0);
    }
    let (m, steps) = maximum_matching_counted(bg);
    (m.len() == bg.left_len(), steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bg1() -> BipartiteGraph {
        BipartiteGraph::from_named(
            &["q2", "q3", "q4"],
            &["d2", "d3"],
            &[("q2", "d2"), ("q2", "d3"), ("q3", "d2"), ("q4", "d2")],
        )
    }

    fn bg2() -> BipartiteGraph {
        BipartiteGraph::from_named(
            &["q2", "q3", "q4"],
            &["d2", "d3", "d4"],
            &[("q2", "d3"), ("q3", "d4"), ("q4", "d2"), ("q2", "d2")],
        )
    }

    #[test]
    fn empty_graph() {
        let bg = BipartiteGraph::new();
        assert!(maximum_matching(&bg).is_empty());
        assert!(has_complete_matching(&bg));
    }

    #[test]
    fn inspecting_graph_without_cover() {
        let bg = bg1();
        let m = maximum_matching(&bg);
        assert_eq!(m.len(), 2);
        assert!(m.is_valid_for(&bg));
        assert!(!has_complete_matching(&bg));
    }

    #[test]
    fn inspecting_graph_with_cover() {
        let bg = bg2();
        let m = maximum_matching(&bg);
        assert_eq!(m.len(), 3);
        assert!(m.is_valid_for(&bg));
        assert!(has_complete_matching(&bg));
        // q2 -> d3, q3 -> d4, q4 -> d2 is the only perfect matching.
        assert_eq!(m.pairs(), &[(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn duplicate_edges_ignored() {
        let mut bg = BipartiteGraph::with_sizes(1, 1);
        bg.add_edge(0, 0);
        bg.add_edge(0, 0);
        assert_eq!(bg.edge_count(), 1);
        assert_eq!(bg.neighbors(0), &[0]);
    }

    #[test]
    fn short_right_side_fails_fast() {
        let mut bg = BipartiteGraph::with_sizes(2, 1);
        bg.add_edge(0, 0);
        bg.add_edge(1, 0);
        assert_eq!(complete_matching_counted(&bg), (false, 0));
    }

    #[test]
    fn deterministic_result() {
        let bg = bg2();
        assert_eq!(maximum_matching(&bg), maximum_matching(&bg.clone()));
    }

    #[test]
    fn dot_marks_matched_edges() {
        let bg = bg2();
        let m = maximum_matching(&bg);
        let names = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let dot = bg.to_dot(
            &names(&["q2", "q3", "q4"]),
            &names(&["d2", "d3", "d4"]),
            Some(&m),
        );
        assert!(dot.contains("\"L:q2\" -- \"R:d3\" [style=bold];"));
        assert!(dot.contains("\"L:q2\" -- \"R:d2\";"));
    }
}

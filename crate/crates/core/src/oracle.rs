//! Brute-force reference implementations.
//!
//! Everything here is exponential or otherwise naive and exists to check the
//! production algorithms on small inputs. Size guards are hard errors.

use std::collections::BTreeMap;

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::graph::{potential_matches, Graph, PatternGraph};
use crate::nodeset::NodeSet;
use crate::simulation::{build_match_result, MatchResult, SimRelation};
use crate::triple_sim::AuxStructures;

pub const MAX_PATTERN_NODES: usize = 6;
pub const MAX_DATA_NODES: usize = 14;
pub const MAX_MATCHING_EDGES: usize = 20;
pub const MAX_HALL_LEFT: usize = 10;

fn guard(q: &Graph, g: &Graph, what: &'static str) -> Result<()> {
    if q.node_count() > MAX_PATTERN_NODES || g.node_count() > MAX_DATA_NODES {
        return Err(Error::Oversize {
            what,
            detail: format!(
                "{} pattern nodes / {} data nodes (limits {MAX_PATTERN_NODES} / {MAX_DATA_NODES})",
                q.node_count(),
                g.node_count()
            ),
        });
    }
    Ok(())
}

/// Injective, label-preserving, edge-preserving map from pattern nodes to
/// data nodes; `mapping[u]` is the image of `u`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct IsoEmbedding {
    pub mapping: Vec<usize>,
}

impl IsoEmbedding {
    /// Independent re-check of injectivity, labels and edges.
    pub fn verify(&self, q: &Graph, g: &Graph) -> bool {
        let m = &self.mapping;
        let injective = (0..m.len()).all(|i| (i + 1..m.len()).all(|j| m[i] != m[j]));
        injective
            && m.len() == q.node_count()
            && q.nodes().all(|u| q.label(u) == g.label(m[u]))
            && q.edges().iter().all(|&(a, b)| g.has_edge(m[a], m[b]))
    }

    pub fn to_named(&self, q: &Graph, g: &Graph) -> BTreeMap<String, String> {
        self.mapping
            .iter()
            .enumerate()
            .map(|(u, &v)| (q.id(u).to_string(), g.id(v).to_string()))
            .collect()
    }

    /// The matched subgraph: image nodes and images of pattern edges.
    pub fn image(&self, q: &Graph, g: &Graph) -> MatchResult {
        let rel = SimRelation::new(
            self.mapping
                .iter()
                .map(|&v| [v].into_iter().collect::<NodeSet>())
                .collect(),
        );
        build_match_result(q, g, &rel)
    }
}

/// All subgraph-isomorphism embeddings, by backtracking over
/// label-compatible candidates in pattern declaration order.
pub fn enumerate_isomorphisms(q: &PatternGraph, g: &Graph) -> Result<Vec<IsoEmbedding>> {
    if q.is_quantified() {
        return Err(Error::QuantifiedPattern("subgraph isomorphism"));
    }
    guard(q, g, "subgraph isomorphism")?;
    let mut out = Vec::new();
    let mut mapping = Vec::with_capacity(q.node_count());
    let mut used = vec![false; g.node_count()];
    extend(q, g, &mut mapping, &mut used, &mut out);
    Ok(out)
}

fn extend(
    q: &Graph,
    g: &Graph,
    mapping: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<IsoEmbedding>,
) {
    let u = mapping.len();
    if u == q.node_count() {
        out.push(IsoEmbedding {
            mapping: mapping.clone(),
        });
        return;
    }
    for v in g.nodes() {
        if used[v] || g.label(v) != q.label(u) {
            continue;
        }
        mapping.push(v);
        let consistent = (0..=u).all(|w| {
            (!q.has_edge(u, w) || g.has_edge(v, mapping[w]))
                && (!q.has_edge(w, u) || g.has_edge(mapping[w], v))
        });
        if consistent {
            used[v] = true;
            extend(q, g, mapping, used, out);
            used[v] = false;
        }
        mapping.pop();
    }
}

/// Naive fixpoint for graph (`dual = false`) or dual simulation: rescans
/// every pair until nothing changes.
pub fn naive_simulation(q: &Graph, g: &Graph, dual: bool) -> Option<SimRelation> {
    let mut sim: Vec<Vec<bool>> = q
        .nodes()
        .map(|u| g.nodes().map(|v| q.label(u) == g.label(v)).collect())
        .collect();
    loop {
        let mut changed = false;
        for u in q.nodes() {
            for v in g.nodes() {
                if !sim[u][v] {
                    continue;
                }
                let children_ok = q
                    .children(u)
                    .iter()
                    .all(|&u2| g.nodes().any(|v2| g.has_edge(v, v2) && sim[u2][v2]));
                let parents_ok = !dual
                    || q.parents(u)
                        .iter()
                        .all(|&u2| g.nodes().any(|v2| g.has_edge(v2, v) && sim[u2][v2]));
                if !(children_ok && parents_ok) {
                    sim[u][v] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    to_relation(g, &sim)
}

fn to_relation(g: &Graph, sim: &[Vec<bool>]) -> Option<SimRelation> {
    let sets: Vec<NodeSet> = sim
        .iter()
        .map(|row| {
            let mut s = NodeSet::with_universe(g.node_count());
            for v in g.nodes().filter(|&v| row[v]) {
                s.insert(v);
            }
            s
        })
        .collect();
    sets.iter()
        .all(|s| !s.is_empty())
        .then(|| SimRelation::new(sets))
}

/// Whether the pattern entries `wanted` can be assigned to pairwise
/// distinct members of `pool` such that each entry's data node is a
/// current candidate of that entry.
fn injective_assignment(wanted: &[usize], pool: &[usize], sim: &[Vec<bool>]) -> bool {
    fn go(
        i: usize,
        wanted: &[usize],
        pool: &[usize],
        sim: &[Vec<bool>],
        used: &mut [bool],
    ) -> bool {
        if i == wanted.len() {
            return true;
        }
        for (k, &w) in pool.iter().enumerate() {
            if !used[k] && sim[wanted[i]][w] {
                used[k] = true;
                if go(i + 1, wanted, pool, sim, used) {
                    return true;
                }
                used[k] = false;
            }
        }
        false
    }
    wanted.len() <= pool.len() && go(0, wanted, pool, sim, &mut vec![false; pool.len()])
}

/// Maximum triple-simulation relation evaluated straight from its
/// definition. Each pair needs an injective assignment of the pattern
/// node's children (a `>= p` child counted `p` times) onto data children
/// and of its parents onto data parents, found by exhaustive search.
pub fn brute_force_triple_relation(q: &PatternGraph, g: &Graph) -> Result<Option<SimRelation>> {
    let order: Vec<usize> = q.nodes().collect();
    brute_force_triple_relation_ordered(q, g, &order)
}

/// Same as [`brute_force_triple_relation`], visiting pattern nodes in
/// `order` (a permutation of the pattern nodes) and data nodes in reverse
/// on odd passes. Used to check order independence.
pub fn brute_force_triple_relation_ordered(
    q: &PatternGraph,
    g: &Graph,
    order: &[usize],
) -> Result<Option<SimRelation>> {
    guard(q, g, "brute-force triple simulation")?;
    let wanted_children: Vec<Vec<usize>> = q
        .nodes()
        .map(|u| {
            q.children(u)
                .iter()
                .flat_map(|&c| std::iter::repeat_n(c, q.quantifier(u, c) as usize))
                .collect()
        })
        .collect();
    let mut sim: Vec<Vec<bool>> = q
        .nodes()
        .map(|u| {
            let pm = potential_matches(q, g, u);
            g.nodes().map(|v| pm.contains(v)).collect()
        })
        .collect();
    let mut pass = 0;
    loop {
        let mut changed = false;
        let data: Vec<usize> = if pass % 2 == 0 {
            g.nodes().collect()
        } else {
            g.nodes().rev().collect()
        };
        for &u in order {
            for &v in &data {
                if sim[u][v]
                    && !(injective_assignment(&wanted_children[u], g.children(v), &sim)
                        && injective_assignment(q.parents(u), g.parents(v), &sim))
                {
                    sim[u][v] = false;
                    changed = true;
                }
            }
        }
        pass += 1;
        if !changed {
            break;
        }
    }
    Ok(to_relation(g, &sim))
}

/// LR check for `(u, v)` by exhaustive search: the LR children of `u`
/// (a `>= p` child counted `p` times) must take pairwise distinct children
/// of `v` inside their `sim` sets, and likewise for the LR parents.
pub fn brute_force_lr_check(
    g: &Graph,
    aux: &AuxStructures,
    sim: &SimRelation,
    u: usize,
    v: usize,
) -> bool {
    let table: Vec<Vec<bool>> = (0..sim.pattern_len())
        .map(|x| g.nodes().map(|w| sim.contains(x, w)).collect())
        .collect();
    let children: Vec<usize> = aux
        .lr_children(u)
        .iter()
        .flat_map(|&(c, p)| std::iter::repeat_n(c, p as usize))
        .collect();
    injective_assignment(&children, g.children(v), &table)
        && injective_assignment(aux.lr_parents(u), g.parents(v), &table)
}

/// Maximum matching size by enumerating every edge subset that forms a
/// matching.
pub fn brute_force_matching_size(bg: &BipartiteGraph) -> Result<usize> {
    let edges: Vec<(usize, usize)> = bg.edges().collect();
    if edges.len() > MAX_MATCHING_EDGES {
        return Err(Error::Oversize {
            what: "brute-force matching",
            detail: format!("{} edges (limit {MAX_MATCHING_EDGES})", edges.len()),
        });
    }
    fn go(
        i: usize,
        edges: &[(usize, usize)],
        lx: &mut [bool],
        ry: &mut [bool],
        size: usize,
    ) -> usize {
        if i == edges.len() {
            return size;
        }
        let skip = go(i + 1, edges, lx, ry, size);
        let (x, y) = edges[i];
        if lx[x] || ry[y] {
            return skip;
        }
        lx[x] = true;
        ry[y] = true;
        let take = go(i + 1, edges, lx, ry, size + 1);
        lx[x] = false;
        ry[y] = false;
        skip.max(take)
    }
    Ok(go(
        0,
        &edges,
        &mut vec![false; bg.left_len()],
        &mut vec![false; bg.right_len()],
        0,
    ))
}

/// Hall's condition: every subset `S` of the left side has at least `|S|`
/// distinct neighbors.
pub fn hall_condition(bg: &BipartiteGraph) -> Result<bool> {
    let n = bg.left_len();
    if n > MAX_HALL_LEFT {
        return Err(Error::Oversize {
            what: "Hall's condition",
            detail: format!("{n} left nodes (limit {MAX_HALL_LEFT})"),
        });
    }
    for mask in 1u32..(1 << n) {
        let mut seen = vec![false; bg.right_len()];
        for x in (0..n).filter(|x| mask & (1 << x) != 0) {
            for &y in bg.neighbors(x) {
                seen[y] = true;
            }
        }
        if seen.iter().filter(|&&b| b).count() < mask.count_ones() as usize {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All-pairs undirected distances by Floyd–Warshall; `None` is unreachable.
#[allow(clippy::needless_range_loop)]
pub fn all_pairs_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for v in 0..n {
        d[v][v] = Some(0);
    }
    for &(a, b) in g.edges() {
        if a != b {
            d[a][b] = Some(1);
            d[b][a] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            for j in 0..n {
                if let Some(kj) = d[k][j] {
                    if d[i][j].is_none_or(|ij| ik + kj < ij) {
                        d[i][j] = Some(ik + kj);
                    }
                }
            }
        }
    }
    d
}

/// Ball membership from the all-pairs table, in data declaration order.
pub fn ball_members(dist: &[Vec<Option<usize>>], center: usize, radius: usize) -> Vec<usize> {
    (0..dist.len())
        .filter(|&v| dist[center][v].is_some_and(|d| d <= radius))
        .collect()
}

/// Definition-level locality oracle: every node is a center, the ball is
/// cut from the all-pairs table, `relation` solves the ball, and the
/// center's component of the ball result is kept.
pub fn local_oracle<F>(q: &PatternGraph, g: &Graph, relation: F) -> Vec<MatchResult>
where
    F: Fn(&PatternGraph, &Graph) -> Option<SimRelation>,
{
    let radius = q.diameter();
    let dist = all_pairs_distances(g);
    let mut unique = BTreeMap::new();
    for center in g.nodes() {
        let ball = g.induced_subgraph(&ball_members(&dist, center, radius));
        if let Some(rel) = relation(q, &ball) {
            if let Some(r) = build_match_result(q, &ball, &rel).component_of(g.id(center)) {
                unique.entry(r.canonical_key()).or_insert(r);
            }
        }
    }
    unique.into_values().collect()
}

/// Strong simulation from its definition using [`naive_simulation`].
pub fn strong_simulation_oracle(q: &PatternGraph, g: &Graph) -> Vec<MatchResult> {
    local_oracle(q, g, |q, ball| naive_simulation(q, ball, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{graph_from, pattern_from};

    fn fork_b() -> PatternGraph {
        pattern_from(
            &[("a", "A"), ("b1", "B"), ("b2", "B")],
            &[("a", "b1"), ("a", "b2")],
            &[],
        )
        .unwrap()
    }

    #[test]
    fn iso_single_edge() {
        let q = pattern_from(&[("a", "A"), ("b", "B")], &[("a", "b")], &[]).unwrap();
        let g = graph_from(&[("x", "A"), ("y", "B")], &[("x", "y")]).unwrap();
        let embs = enumerate_isomorphisms(&q, &g).unwrap();
        assert_eq!(embs.len(), 1);
        assert!(embs[0].verify(&q, &g));
    }

    #[test]
    fn iso_injectivity() {
        let g = graph_from(&[("x", "A"), ("y", "B")], &[("x", "y")]).unwrap();
        assert!(enumerate_isomorphisms(&fork_b(), &g).unwrap().is_empty());
    }

    #[test]
    fn iso_size_guard() {
        let q = pattern_from(&[("a", "A")], &[], &[]).unwrap();
        let nodes: Vec<(String, &str)> = (0..15).map(|i| (format!("n{i}"), "A")).collect();
        let refs: Vec<(&str, &str)> = nodes.iter().map(|(i, l)| (i.as_str(), *l)).collect();
        let g = graph_from(&refs, &[]).unwrap();
        assert!(matches!(
            enumerate_isomorphisms(&q, &g),
            Err(Error::Oversize { .. })
        ));
        assert!(matches!(
            brute_force_triple_relation(&q, &g),
            Err(Error::Oversize { .. })
        ));
    }

    #[test]
    fn triple_oracle_pigeonhole() {
        let two = graph_from(
            &[("x", "A"), ("y", "B"), ("z", "B")],
            &[("x", "y"), ("x", "z")],
        )
        .unwrap();
        let rel = brute_force_triple_relation(&fork_b(), &two)
            .unwrap()
            .unwrap();
        assert_eq!(rel.pair_count(), 5);
        let one = graph_from(&[("x", "A"), ("y", "B")], &[("x", "y")]).unwrap();
        assert!(brute_force_triple_relation(&fork_b(), &one)
            .unwrap()
            .is_none());
    }

    #[test]
    fn matching_oracle_small_cases() {
        assert_eq!(
            brute_force_matching_size(&BipartiteGraph::new()).unwrap(),
            0
        );
        let mut k33 = BipartiteGraph::with_sizes(3, 3);
        for x in 0..3 {
            for y in 0..3 {
                k33.add_edge(x, y);
            }
        }
        assert_eq!(brute_force_matching_size(&k33).unwrap(), 3);
        let bg1 = BipartiteGraph::from_named(
            &["q2", "q3", "q4"],
            &["d2", "d3"],
            &[("q2", "d2"), ("q2", "d3"), ("q3", "d2"), ("q4", "d2")],
        );
        assert_eq!(brute_force_matching_size(&bg1).unwrap(), 2);
    }

    #[test]
    fn matching_oracle_guard() {
        let mut big = BipartiteGraph::with_sizes(5, 5);
        for x in 0..5 {
            for y in 0..5 {
                big.add_edge(x, y);
            }
        }
        assert!(brute_force_matching_size(&big).is_err());
    }

    #[test]
    fn hall_small_cases() {
        assert!(hall_condition(&BipartiteGraph::new()).unwrap());
        let shared = BipartiteGraph::from_named(&["a", "b"], &["y"], &[("a", "y"), ("b", "y")]);
        assert!(!hall_condition(&shared).unwrap());
        assert!(hall_condition(&BipartiteGraph::with_sizes(11, 0)).is_err());
    }

    #[test]
    fn floyd_warshall_path() {
        let g = graph_from(
            &[("a", "A"), ("b", "B"), ("c", "C")],
            &[("a", "b"), ("c", "b")],
        )
        .unwrap();
        let d = all_pairs_distances(&g);
        assert_eq!(d[0][2], Some(2));
        assert_eq!(ball_members(&d, 0, 1), vec![0, 1]);
    }
}

//! Triple simulation.
//!
//! Dual simulation preserves child and parent relationships but lets several
//! same-label children (or parents) of a pattern node collapse onto a single
//! data node. Triple simulation additionally requires `n` distinct data
//! witnesses for `n` same-direction pattern neighbors. Neighbors whose label
//! is unique among their siblings are checked with the usual counters; the
//! ones sharing a label (label-repetition constraints) are checked together
//! by looking for a matching that saturates them in a bipartite graph
//! between pattern neighbors and candidate data neighbors.
//!
//! Counting quantifiers `>= p` on child edges are handled the same way: the
//! child contributes `p` entries to the bipartite graph.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bipartite::{complete_matching_counted, BipartiteGraph, Matching};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, PatternGraph};
use crate::simulation::{build_match_result, MatchResult, SimRelation};

/// Neighbor classification of the pattern plus the match counters.
///
/// `child_as_match(v, u)` is the number of children of data node `v` that
/// are currently in `sim(u)`; `parent_as_match(v, u)` the number of parents.
#[derive(Clone, Debug)]
pub struct AuxStructures {
    cp_children: Vec<Vec<usize>>,
    cp_parents: Vec<Vec<usize>>,
    lr_children: Vec<Vec<(usize, u32)>>,
    lr_parents: Vec<Vec<usize>>,
    child_as_match: Vec<Vec<u32>>,
    parent_as_match: Vec<Vec<u32>>,
}

impl AuxStructures {
    pub fn init(q: &PatternGraph, g: &Graph, sim: &SimRelation) -> Self {
        let n = q.node_count();
        let mut aux = Self {
            cp_children: vec![Vec::new(); n],
            cp_parents: vec![Vec::new(); n],
            lr_children: vec![Vec::new(); n],
            lr_parents: vec![Vec::new(); n],
            child_as_match: vec![vec![0; g.node_count()]; n],
            parent_as_match: vec![vec![0; g.node_count()]; n],
        };
        for u in q.nodes() {
            // Occurrences per label, a quantified child counting p times.
            let mut occ: HashMap<&str, u32> = HashMap::new();
            for &c in q.children(u) {
                *occ.entry(q.label(c)).or_default() += q.quantifier(u, c);
            }
            for &c in q.children(u) {
                let copies = q.quantifier(u, c);
                if occ[q.label(c)] > 1 {
                    aux.lr_children[u].push((c, copies));
                } else {
                    aux.cp_children[u].push(c);
                }
            }
            let mut occ: HashMap<&str, u32> = HashMap::new();
            for &p in q.parents(u) {
                *occ.entry(q.label(p)).or_default() += 1;
            }
            for &p in q.parents(u) {
                if occ[q.label(p)] > 1 {
                    aux.lr_parents[u].push(p);
                } else {
                    aux.cp_parents[u].push(p);
                }
            }
        }
        for u in q.nodes() {
            for v in sim.get(u).iter() {
                for &w in g.parents(v) {
                    aux.child_as_match[u][w] += 1;
                }
                for &w in g.children(v) {
                    aux.parent_as_match[u][w] += 1;
                }
            }
        }
        aux
    }

    /// Children of `u` whose label is unique among `u`'s children.
    pub fn cp_children(&self, u: usize) -> &[usize] {
        &self.cp_children[u]
    }

    pub fn cp_parents(&self, u: usize) -> &[usize] {
        &self.cp_parents[u]
    }

    /// Children of `u` under a label-repetition constraint, each with the
    /// number of distinct witnesses it needs (its quantifier, 1 if none).
    pub fn lr_children(&self, u: usize) -> &[(usize, u32)] {
        &self.lr_children[u]
    }

    pub fn lr_parents(&self, u: usize) -> &[usize] {
        &self.lr_parents[u]
    }

    pub fn has_lr(&self, u: usize) -> bool {
        !self.lr_children[u].is_empty() || !self.lr_parents[u].is_empty()
    }

    pub fn child_as_match(&self, v: usize, u: usize) -> u32 {
        self.child_as_match[u][v]
    }

    pub fn parent_as_match(&self, v: usize, u: usize) -> u32 {
        self.parent_as_match[u][v]
    }

    /// Accounts for the removal of `v` from `sim(u)`.
    ///
    /// Panics if a counter would drop below zero, which means the counters
    /// and the relation have diverged.
    pub fn update_struct(&mut self, g: &Graph, u: usize, v: usize) {
        for &w in g.parents(v) {
            let c = &mut self.child_as_match[u][w];
            *c = c
                .checked_sub(1)
                .expect("child_as_match underflow: counters out of sync with sim");
        }
        for &w in g.children(v) {
            let c = &mut self.parent_as_match[u][w];
            *c = c
                .checked_sub(1)
                .expect("parent_as_match underflow: counters out of sync with sim");
        }
    }

    /// Compares every counter with a recount from `sim`.
    pub fn counters_match(&self, g: &Graph, sim: &SimRelation) -> bool {
        (0..sim.pattern_len()).all(|u| {
            g.nodes().all(|v| {
                let children = g
                    .children(v)
                    .iter()
                    .filter(|&&w| sim.contains(u, w))
                    .count();
                let parents = g.parents(v).iter().filter(|&&w| sim.contains(u, w)).count();
                self.child_as_match[u][v] as usize == children
                    && self.parent_as_match[u][v] as usize == parents
            })
        })
    }
}

/// A bipartite graph inspecting the constrained neighbors of one `(u, v)`
/// pair, with the pattern entry (node, copy number) and the data node
/// behind each side.
#[derive(Clone, Debug, Default)]
pub struct Inspection {
    pub graph: BipartiteGraph,
    pub left: Vec<(usize, u32)>,
    pub right: Vec<usize>,
}

impl Inspection {
    fn build(
        entries: impl Iterator<Item = (usize, u32)>,
        data_neighbors: &[usize],
        sim: &SimRelation,
    ) -> Self {
        let mut insp = Inspection::default();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for (u2, copies) in entries {
            let first = insp.left.len();
            for k in 0..copies {
                insp.graph.add_left();
                insp.left.push((u2, k));
            }
            for &w in data_neighbors {
                if !sim.contains(u2, w) {
                    continue;
                }
                let y = *slot.entry(w).or_insert_with(|| {
                    insp.right.push(w);
                    insp.graph.add_right()
                });
                for x in first..insp.left.len() {
                    insp.graph.add_edge(x, y);
                }
            }
        }
        insp
    }

    pub fn to_dot(&self, q: &Graph, g: &Graph, matching: Option<&Matching>) -> String {
        let left: Vec<String> = self
            .left
            .iter()
            .map(|&(u, k)| {
                let copies = self.left.iter().filter(|(x, _)| *x == u).count();
                if copies > 1 {
                    format!("{}#{}", q.id(u), k + 1)
                } else {
                    q.id(u).to_string()
                }
            })
            .collect();
        let right: Vec<String> = self.right.iter().map(|&v| g.id(v).to_string()).collect();
        self.graph.to_dot(&left, &right, matching)
    }
}

/// Inspecting graph over the label-repeated children of `u` for candidate
/// `v`. With `with_copies`, a child with quantifier `p` appears `p` times.
pub fn inspect_children(
    _q: &PatternGraph,
    g: &Graph,
    aux: &AuxStructures,
    sim: &SimRelation,
    u: usize,
    v: usize,
    with_copies: bool,
) -> Inspection {
    let entries = aux
        .lr_children(u)
        .iter()
        .map(|&(c, p)| (c, if with_copies { p } else { 1 }));
    Inspection::build(entries, g.children(v), sim)
}

pub fn inspect_parents(
    _q: &PatternGraph,
    g: &Graph,
    aux: &AuxStructures,
    sim: &SimRelation,
    u: usize,
    v: usize,
) -> Inspection {
    let entries = aux.lr_parents(u).iter().map(|&p| (p, 1));
    Inspection::build(entries, g.parents(v), sim)
}

#[allow(clippy::too_many_arguments)]
fn check_lr(
    q: &PatternGraph,
    g: &Graph,
    aux: &AuxStructures,
    sim: &SimRelation,
    u: usize,
    v: usize,
    with_copies: bool,
    steps: &mut u64,
) -> bool {
    let children = inspect_children(q, g, aux, sim, u, v, with_copies);
    let (ok, s) = complete_matching_counted(&children.graph);
    *steps += s;
    if !ok {
        return false;
    }
    let parents = inspect_parents(q, g, aux, sim, u, v);
    let (ok, s) = complete_matching_counted(&parents.graph);
    *steps += s;
    ok
}

/// Whether the label-repetition constraints on the children and on the
/// parents of `u` can be met by distinct children and parents of `v`.
/// Quantifiers are ignored; see [`lr_checking_quantified`].
pub fn lr_checking(
    q: &PatternGraph,
    g: &Graph,
    aux: &AuxStructures,
    sim: &SimRelation,
    u: usize,
    v: usize,
) -> bool {
    check_lr(q, g, aux, sim, u, v, false, &mut 0)
}

/// [`lr_checking`] where a child reached through a `>= p` edge needs `p`
/// distinct witnesses among the children of `v`.
pub fn lr_checking_quantified(
    q: &PatternGraph,
    g: &Graph,
    aux: &AuxStructures,
    sim: &SimRelation,
    u: usize,
    v: usize,
) -> bool {
    check_lr(q, g, aux, sim, u, v, true, &mut 0)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TsimStats {
    pub passes: u64,
    pub lr_checks: u64,
    pub augment_steps: u64,
    pub removals: u64,
}

/// Maximum triple-simulation relation together with its match result.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleMatch {
    pub relation: SimRelation,
    pub result: MatchResult,
}

/// Runs the fixpoint and returns the maximum relation, or `None` when some
/// pattern node loses all its candidates.
pub fn triple_relation(q: &PatternGraph, g: &Graph) -> Option<SimRelation> {
    triple_relation_with_stats(q, g).0
}

pub fn triple_relation_with_stats(q: &PatternGraph, g: &Graph) -> (Option<SimRelation>, TsimStats) {
    let mut stats = TsimStats::default();
    let mut sim = SimRelation::potential(q, g);
    if !sim.is_total() {
        return (None, stats);
    }
    let mut aux = AuxStructures::init(q, g, &sim);
    loop {
        stats.passes += 1;
        let mut changed = false;
        for u in q.nodes() {
            let has_lr = aux.has_lr(u);
            for v in sim.get(u).to_vec() {
                let keep = aux.cp_children[u]
                    .iter()
                    .all(|&c| aux.child_as_match[c][v] > 0)
                    && aux.cp_parents[u]
                        .iter()
                        .all(|&p| aux.parent_as_match[p][v] > 0)
                    && (!has_lr || {
                        stats.lr_checks += 1;
                        check_lr(q, g, &aux, &sim, u, v, true, &mut stats.augment_steps)
                    });
                if !keep {
                    sim.get_mut(u).remove(v);
                    aux.update_struct(g, u, v);
                    stats.removals += 1;
                    changed = true;
                }
            }
            if sim.get(u).is_empty() {
                return (None, stats);
            }
        }
        if !changed {
            return (Some(sim), stats);
        }
    }
}

pub fn triple_simulation(q: &PatternGraph, g: &Graph) -> Option<TripleMatch> {
    triple_simulation_with_stats(q, g).0
}

pub fn triple_simulation_with_stats(
    q: &PatternGraph,
    g: &Graph,
) -> (Option<TripleMatch>, TsimStats) {
    let (rel, stats) = triple_relation_with_stats(q, g);
    let m = rel.map(|relation| TripleMatch {
        result: build_match_result(q, g, &relation),
        relation,
    });
    (m, stats)
}

/// Rewrites every `>= p` edge `(u, u')` with `p >= 2` into `p` plain copies
/// of `u'` together with the subtree below it.
///
/// The subtree hanging off `u'` (everything reachable through child edges)
/// must be a tree whose only entry point is the quantified edge; otherwise
/// the copies would not be independent and the rewrite is refused. Copies
/// get fresh ids of the form `<id>~<k>`. Quantifiers nested inside a copied
/// subtree are copied along and expanded in turn.
pub fn transform_quantified_to_lr(q: &PatternGraph) -> Result<PatternGraph> {
    let mut current = q.clone();
    while let Some(((u, c), p)) = current.annotated_edges().into_iter().find(|&(_, p)| p >= 2) {
        current = expand_edge(&current, u, c, p)?;
    }
    Ok(current)
}

fn expand_edge(q: &PatternGraph, u: usize, top: usize, p: u32) -> Result<PatternGraph> {
    let refuse = |reason: &str| Error::UnsupportedTransformation {
        src: q.id(u).to_string(),
        dst: q.id(top).to_string(),
        reason: reason.to_string(),
    };
    let mut subtree = vec![top];
    let mut member = vec![false; q.node_count()];
    member[top] = true;
    let mut head = 0;
    while head < subtree.len() {
        let w = subtree[head];
        head += 1;
        for &c in q.children(w) {
            if c == u || c == top {
                return Err(refuse("the quantified child reaches back into the pattern"));
            }
            if member[c] {
                return Err(refuse(
                    "the quantified child's descendants do not form a tree",
                ));
            }
            member[c] = true;
            subtree.push(c);
        }
    }
    if q.parents(top) != [u] {
        return Err(refuse("the quantified child has other parents"));
    }
    if subtree[1..].iter().any(|&w| q.parents(w).len() != 1) {
        return Err(refuse(
            "a descendant of the quantified child has several parents",
        ));
    }

    let mut builder =
        GraphBuilder::with_capacity(q.node_count() + subtree.len() * (p as usize - 1));
    for v in q.nodes() {
        builder.add_node(q.id(v), q.label(v))?;
    }
    let mut quantifiers: Vec<((String, String), u32)> = Vec::new();
    for &(a, b) in q.edges() {
        builder.add_edge(q.id(a), q.id(b))?;
        let k = q.quantifier(a, b);
        if k != 1 && (a, b) != (u, top) {
            quantifiers.push(((q.id(a).to_string(), q.id(b).to_string()), k));
        }
    }
    let mut taken: std::collections::HashSet<String> =
        q.nodes().map(|v| q.id(v).to_string()).collect();
    for copy in 2..=p {
        let mut fresh = HashMap::new();
        for &w in &subtree {
            let mut id = format!("{}~{}", q.id(w), copy);
            while taken.contains(&id) {
                id.push('\'');
            }
            taken.insert(id.clone());
            builder.add_node(&id, q.label(w))?;
            fresh.insert(w, id);
        }
        builder.add_edge(q.id(u), &fresh[&top])?;
        for &w in &subtree {
            for &c in q.children(w) {
                builder.add_edge(&fresh[&w], &fresh[&c])?;
                let k = q.quantifier(w, c);
                if k != 1 {
                    quantifiers.push(((fresh[&w].clone(), fresh[&c].clone()), k));
                }
            }
        }
    }
    let graph = builder.build();
    let quantifiers = quantifiers
        .into_iter()
        .map(|((a, b), k)| Ok(((graph.node(&a)?, graph.node(&b)?), k)))
        .collect::<Result<Vec<_>>>()?;
    PatternGraph::with_quantifiers(graph, quantifiers)
}

//! Seeded random instances for property tests and benchmarks.
//!
//! Data node ids are `d0, d1, ...`, pattern node ids `q0, q1, ...` and labels
//! `L0, L1, ...`. The same seed always yields the same instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bipartite::BipartiteGraph;
use crate::graph::{Graph, GraphBuilder, PatternGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn label(i: usize) -> String {
    format!("L{i}")
}

/// `nodes` nodes with uniform labels from `labels` and `edges` uniformly
/// drawn ordered pairs (duplicates collapse, self-loops allowed).
pub fn random_graph<R: Rng>(rng: &mut R, nodes: usize, labels: usize, edges: usize) -> Graph {
    let mut b = GraphBuilder::with_capacity(nodes);
    for i in 0..nodes {
        b.add_node(&format!("d{i}"), &label(rng.gen_range(0..labels)))
            .expect("fresh ids");
    }
    if nodes > 0 {
        for _ in 0..edges {
            let (s, d) = (rng.gen_range(0..nodes), rng.gen_range(0..nodes));
            b.add_edge_by_index(s, d).expect("in range");
        }
    }
    b.build()
}

/// Connected pattern: a random spanning tree with random edge directions,
/// plus up to `extra_edges` further random edges.
pub fn random_pattern<R: Rng>(
    rng: &mut R,
    nodes: usize,
    labels: usize,
    extra_edges: usize,
) -> PatternGraph {
    assert!(nodes > 0, "patterns are nonempty");
    let mut b = GraphBuilder::with_capacity(nodes);
    for i in 0..nodes {
        b.add_node(&format!("q{i}"), &label(rng.gen_range(0..labels)))
            .expect("fresh ids");
    }
    for i in 1..nodes {
        let j = rng.gen_range(0..i);
        let (s, d) = if rng.gen_bool(0.5) { (i, j) } else { (j, i) };
        b.add_edge_by_index(s, d).expect("in range");
    }
    for _ in 0..extra_edges {
        let (s, d) = (rng.gen_range(0..nodes), rng.gen_range(0..nodes));
        b.add_edge_by_index(s, d).expect("in range");
    }
    PatternGraph::new(b.build()).expect("spanning tree keeps it connected")
}

/// No pattern node has two children, or two parents, with the same label.
pub fn is_lr_free(q: &Graph) -> bool {
    let distinct = |ns: &[usize]| {
        let mut labels: Vec<&str> = ns.iter().map(|&n| q.label(n)).collect();
        labels.sort_unstable();
        labels.windows(2).all(|w| w[0] != w[1])
    };
    q.nodes()
        .all(|u| distinct(q.children(u)) && distinct(q.parents(u)))
}

/// Rejection-samples [`random_pattern`] until it is LR-free.
pub fn random_lr_free_pattern<R: Rng>(
    rng: &mut R,
    nodes: usize,
    labels: usize,
    extra_edges: usize,
) -> PatternGraph {
    loop {
        let q = random_pattern(rng, nodes, labels, extra_edges);
        if is_lr_free(&q) {
            return q;
        }
    }
}

/// Out-tree rooted at `q0` whose edges carry quantifiers drawn from
/// `1..=max_p`, with at least one edge above 1 when `nodes > 1`.
pub fn random_quantified_tree<R: Rng>(
    rng: &mut R,
    nodes: usize,
    labels: usize,
    max_p: u32,
) -> PatternGraph {
    assert!(nodes > 0 && max_p >= 1);
    let mut b = GraphBuilder::with_capacity(nodes);
    for i in 0..nodes {
        b.add_node(&format!("q{i}"), &label(rng.gen_range(0..labels)))
            .expect("fresh ids");
    }
    let mut quantifiers = Vec::new();
    for i in 1..nodes {
        let parent = rng.gen_range(0..i);
        b.add_edge_by_index(parent, i).expect("in range");
        quantifiers.push(((parent, i), rng.gen_range(1..=max_p)));
    }
    if max_p >= 2 && !quantifiers.is_empty() && quantifiers.iter().all(|&(_, p)| p == 1) {
        let k = rng.gen_range(0..quantifiers.len());
        quantifiers[k].1 = rng.gen_range(2..=max_p);
    }
    PatternGraph::with_quantifiers(b.build(), quantifiers).expect("valid tree")
}

/// Bipartite graph with up to `edges` random edges (duplicates collapse).
pub fn random_bipartite<R: Rng>(
    rng: &mut R,
    left: usize,
    right: usize,
    edges: usize,
) -> BipartiteGraph {
    let mut bg = BipartiteGraph::with_sizes(left, right);
    if left > 0 && right > 0 {
        for _ in 0..edges {
            bg.add_edge(rng.gen_range(0..left), rng.gen_range(0..right));
        }
    }
    bg
}

/// Random permutation of `0..n`.
pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

/// Fixed 6-node pattern with label repetition on both the child side
/// (`q0` has two `L1` children, `q3` two `L3` children) and the parent side
/// (`q4` and `q5` each have one parent of each label).
pub fn lr_bench_pattern() -> PatternGraph {
    crate::graph::pattern_from(
        &[
            ("q0", "L0"),
            ("q1", "L1"),
            ("q2", "L1"),
            ("q3", "L2"),
            ("q4", "L3"),
            ("q5", "L3"),
        ],
        &[
            ("q0", "q1"),
            ("q0", "q2"),
            ("q0", "q3"),
            ("q1", "q4"),
            ("q2", "q5"),
            ("q3", "q4"),
            ("q3", "q5"),
        ],
        &[],
    )
    .expect("valid pattern")
}

/// Root `q0:L0` with `multiplicity` children labelled `L1`, each child with
/// its own `L2` child. The root carries an LR constraint of that size.
pub fn lr_star_pattern(multiplicity: usize) -> PatternGraph {
    assert!(multiplicity > 0);
    let mut b = GraphBuilder::with_capacity(1 + 2 * multiplicity);
    b.add_node("q0", "L0").expect("fresh ids");
    for k in 0..multiplicity {
        let c = b
            .add_node(&format!("q{}", 1 + 2 * k), "L1")
            .expect("fresh ids");
        let gc = b
            .add_node(&format!("q{}", 2 + 2 * k), "L2")
            .expect("fresh ids");
        b.add_edge_by_index(0, c).expect("in range");
        b.add_edge_by_index(c, gc).expect("in range");
    }
    PatternGraph::new(b.build()).expect("star is connected")
}

//! Shared inputs for the criterion benchmarks.

use triplesim_core::generate;
use triplesim_core::harness::data_graph;
use triplesim_core::{BipartiteGraph, Graph, PatternGraph};

pub const LABELS: usize = 4;
pub const AVG_DEGREE: f64 = 10.0;
/// Keeps radius-bounded balls well below the whole graph.
pub const SPARSE_DEGREE: f64 = 3.0;
pub const SEED: u64 = 1;

/// The LR benchmark pattern against a random graph of `size` nodes.
pub fn lr_instance(size: usize) -> (PatternGraph, Graph) {
    (
        generate::lr_bench_pattern(),
        data_graph(size, SEED, LABELS, AVG_DEGREE),
    )
}

/// A connected pattern without repeated sibling labels, for comparing
/// semantics on equal footing.
pub fn lr_free_instance(size: usize, pattern_nodes: usize) -> (PatternGraph, Graph) {
    let mut rng = generate::rng(SEED);
    let q = generate::random_lr_free_pattern(&mut rng, pattern_nodes, LABELS, 1);
    (q, data_graph(size, SEED, LABELS, SPARSE_DEGREE))
}

/// Square bipartite graph with about `degree` edges per left node.
pub fn bipartite_instance(side: usize, degree: usize) -> BipartiteGraph {
    let mut rng = generate::rng(SEED ^ side as u64);
    generate::random_bipartite(&mut rng, side, side, side * degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_are_reproducible() {
        let (q1, g1) = lr_instance(200);
        let (q2, g2) = lr_instance(200);
        assert_eq!(q1, q2);
        assert_eq!(g1, g2);
        assert_eq!(g1.node_count(), 200);
        let (q, _) = lr_free_instance(100, 4);
        assert!(generate::is_lr_free(&q));
        assert_eq!(bipartite_instance(50, 3).left_len(), 50);
    }
}

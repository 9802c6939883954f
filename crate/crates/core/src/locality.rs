//! Balls of bounded radius and the locality-restricted matchers.
//!
//! Both strong simulation and triple simulation under locality follow the
//! same loop: for every candidate center, cut out the ball of radius `d_Q`,
//! compute the maximum relation inside the ball and keep the weakly connected
//! component of its match result that contains the center. Per-ball work is
//! independent and runs on the rayon pool; results are sorted by canonical
//! form afterwards so the output does not depend on scheduling.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, PatternGraph};
use crate::simulation::{build_match_result, MatchResult, RefineStats, SimRelation};
use crate::triple_sim::{self, TsimStats};

/// Induced subgraph of all nodes within undirected distance `radius` of
/// `center`. The center is node 0 of `graph`.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: usize,
    pub radius: usize,
    pub graph: Graph,
}

impl Ball {
    pub fn center_id<'a>(&self, g: &'a Graph) -> &'a str {
        g.id(self.center)
    }
}

pub fn extract_ball(g: &Graph, center: usize, radius: usize) -> Result<Ball> {
    if center >= g.node_count() {
        return Err(Error::UnknownNode(center.to_string()));
    }
    let nodes = g.nodes_within(center, radius);
    Ok(Ball {
        center,
        radius,
        graph: g.induced_subgraph(&nodes),
    })
}

pub fn extract_ball_by_id(g: &Graph, center: &str, radius: usize) -> Result<Ball> {
    extract_ball(g, g.node(center)?, radius)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalityOptions {
    /// Skip centers whose label does not occur in the pattern. Such a center
    /// can never belong to the match, so its ball contributes nothing.
    pub center_prune: bool,
    pub parallel: bool,
}

impl Default for LocalityOptions {
    fn default() -> Self {
        Self {
            center_prune: true,
            parallel: true,
        }
    }
}

/// Work counters summed over all balls.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallStats {
    pub balls: u64,
    pub passes: u64,
    pub lr_checks: u64,
    pub augment_steps: u64,
    pub removals: u64,
}

impl BallStats {
    pub(crate) fn from_refine(s: RefineStats) -> Self {
        Self {
            balls: 1,
            passes: s.visits,
            removals: s.removals,
            ..Self::default()
        }
    }

    pub(crate) fn from_tsim(s: TsimStats) -> Self {
        Self {
            balls: 1,
            passes: s.passes,
            lr_checks: s.lr_checks,
            augment_steps: s.augment_steps,
            removals: s.removals,
        }
    }

    fn add(mut self, o: Self) -> Self {
        self.balls += o.balls;
        self.passes += o.passes;
        self.lr_checks += o.lr_checks;
        self.augment_steps += o.augment_steps;
        self.removals += o.removals;
        self
    }
}

pub(crate) fn local_matches<F>(
    q: &PatternGraph,
    g: &Graph,
    opts: LocalityOptions,
    solve: F,
) -> (Vec<MatchResult>, BallStats)
where
    F: Fn(&PatternGraph, &Graph) -> (Option<SimRelation>, BallStats) + Sync,
{
    let radius = q.diameter();
    let labels: HashSet<&str> = q.nodes().map(|u| q.label(u)).collect();
    let centers: Vec<usize> = g
        .nodes()
        .filter(|&v| !opts.center_prune || labels.contains(g.label(v)))
        .collect();

    let per_center = |v: usize| -> (Option<MatchResult>, BallStats) {
        let ball = extract_ball(g, v, radius).expect("center is a data node");
        let (rel, stats) = solve(q, &ball.graph);
        let result =
            rel.and_then(|rel| build_match_result(q, &ball.graph, &rel).component_of(g.id(v)));
        (result, stats)
    };
    let outcomes: Vec<_> = if opts.parallel {
        centers.par_iter().map(|&v| per_center(v)).collect()
    } else {
        centers.iter().map(|&v| per_center(v)).collect()
    };

    let mut stats = BallStats::default();
    let mut unique = BTreeMap::new();
    for (result, s) in outcomes {
        stats = stats.add(s);
        if let Some(r) = result {
            unique.entry(r.canonical_key()).or_insert(r);
        }
    }
    (unique.into_values().collect(), stats)
}

/// Triple simulation under locality (Match⁺): the de-duplicated union of
/// the per-ball triple-simulation results.
pub fn match_plus(q: &PatternGraph, g: &Graph) -> Vec<MatchResult> {
    match_plus_with_stats(q, g, LocalityOptions::default()).0
}

pub fn match_plus_with_stats(
    q: &PatternGraph,
    g: &Graph,
    opts: LocalityOptions,
) -> (Vec<MatchResult>, BallStats) {
    local_matches(q, g, opts, |q, ball| {
        let (rel, stats) = triple_sim::triple_relation_with_stats(q, ball);
        (rel, BallStats::from_tsim(stats))
    })
}

/// Union of several results as one graph; used to compare a list of local
/// results against a single global result.
pub fn union_of(results: &[MatchResult]) -> MatchResult {
    let mut builder = Graph::builder();
    for r in results {
        let rg = r.graph();
        for v in rg.nodes() {
            let _ = builder.add_node(rg.id(v), rg.label(v));
        }
    }
    for r in results {
        let rg = r.graph();
        for &(a, b) in rg.edges() {
            builder
                .add_edge(rg.id(a), rg.id(b))
                .expect("endpoints were added above");
        }
    }
    MatchResult::from_graph(builder.build())
}

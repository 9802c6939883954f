//! Graph pattern matching under simulation-family semantics.
//!
//! The crate covers graph, dual and strong simulation, triple simulation
//! (dual simulation that also demands distinct witnesses for same-label
//! children and parents), its locality-restricted variant, `>= p` counting
//! quantifiers on pattern edges, and brute-force oracles for cross-checking.
//!
//! ```
//! use triplesim_core::{graph_from, pattern_from, triple_simulation, dual_simulation};
//!
//! let q = pattern_from(&[("a", "A"), ("b1", "B"), ("b2", "B")], &[("a", "b1"), ("a", "b2")], &[])?;
//! let g = graph_from(&[("x", "A"), ("y", "B")], &[("x", "y")])?;
//! assert!(dual_simulation(&q, &g)?.is_some());
//! assert!(triple_simulation(&q, &g).is_none());
//! # Ok::<(), triplesim_core::Error>(())
//! ```

pub mod bipartite;
pub mod error;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod io;
pub mod locality;
pub mod nodeset;
pub mod oracle;
pub mod report;
pub mod simulation;
pub mod triple_sim;

pub use bipartite::{has_complete_matching, maximum_matching, BipartiteGraph, Matching};
pub use error::{Error, Result};
pub use graph::{
    graph_from, pattern_from, potential_matches, Direction, Graph, GraphBuilder, PatternGraph,
};
pub use io::{read_graph, read_pattern, Format};
pub use locality::{extract_ball, match_plus, union_of, Ball, BallStats, LocalityOptions};
pub use nodeset::NodeSet;
pub use report::{run_match, MatchReport, Semantics};
pub use simulation::{
    build_match_result, dual_simulation, graph_simulation, strong_simulation, MatchResult,
    SimRelation,
};
pub use triple_sim::{
    lr_checking, lr_checking_quantified, transform_quantified_to_lr, triple_relation,
    triple_simulation, AuxStructures, TripleMatch, TsimStats,
};

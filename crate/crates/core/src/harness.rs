//! Benchmark harness: synthetic instances from a TOML config, one CSV row
//! per (size, seed, semantics).
//!
//! ```toml
//! sizes = [1000, 2000, 4000]
//! seeds = [1, 2]
//! labels = 4
//! avg_degree = 3.0
//! semantics = ["dual", "triple", "triple-local"]
//!
//! [pattern]
//! kind = "lr-star"
//! multiplicity = 3
//! ```
//!
//! Pattern kinds: `lr-bench` (the default fixed 6-node pattern), `lr-star`
//! (`multiplicity`), `random` and `lr-free` (`nodes`, `extra_edges`).

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generate;
use crate::graph::{Graph, PatternGraph};
use crate::locality::LocalityOptions;
use crate::report::{run_match, Semantics};

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PatternSpec {
    #[default]
    LrBench,
    LrStar {
        multiplicity: usize,
    },
    Random {
        nodes: usize,
        #[serde(default)]
        extra_edges: usize,
    },
    LrFree {
        nodes: usize,
        #[serde(default)]
        extra_edges: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_labels")]
    pub labels: usize,
    #[serde(default = "default_degree")]
    pub avg_degree: f64,
    pub semantics: Vec<Semantics>,
    #[serde(default)]
    pub pattern: PatternSpec,
}

fn default_seeds() -> Vec<u64> {
    vec![1]
}

fn default_labels() -> usize {
    4
}

fn default_degree() -> f64 {
    3.0
}

impl BenchConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: BenchConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml_str(&fs::read_to_string(path)?)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_string()));
        if self.sizes.is_empty() || self.sizes.contains(&0) {
            return bad("`sizes` must list positive node counts");
        }
        if self.seeds.is_empty() {
            return bad("`seeds` must not be empty");
        }
        if self.labels == 0 {
            return bad("`labels` must be positive");
        }
        if !(self.avg_degree.is_finite() && self.avg_degree >= 0.0) {
            return bad("`avg_degree` must be a non-negative number");
        }
        if self.semantics.is_empty() {
            return bad("`semantics` must not be empty");
        }
        if self.semantics.contains(&Semantics::Iso) {
            return bad("`iso` is exponential and cannot be benchmarked");
        }
        match self.pattern {
            PatternSpec::LrStar { multiplicity: 0 } => bad("`multiplicity` must be positive"),
            PatternSpec::Random { nodes: 0, .. } | PatternSpec::LrFree { nodes: 0, .. } => {
                bad("pattern `nodes` must be positive")
            }
            _ => Ok(()),
        }
    }

    fn pattern_for(&self, seed: u64) -> PatternGraph {
        let mut rng = generate::rng(seed);
        match self.pattern {
            PatternSpec::LrBench => generate::lr_bench_pattern(),
            PatternSpec::LrStar { multiplicity } => generate::lr_star_pattern(multiplicity),
            PatternSpec::Random { nodes, extra_edges } => {
                generate::random_pattern(&mut rng, nodes, self.labels, extra_edges)
            }
            PatternSpec::LrFree { nodes, extra_edges } => {
                generate::random_lr_free_pattern(&mut rng, nodes, self.labels, extra_edges)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub pattern_nodes: usize,
    pub data_nodes: usize,
    pub data_edges: usize,
    pub semantics: Semantics,
    pub seed: u64,
    pub wall_ms: f64,
    pub passes: u64,
    pub lr_checks: u64,
    pub augment_steps: u64,
    /// Distinct data nodes over all results.
    pub result_nodes: usize,
}

/// Synthetic data graph with `round(size * avg_degree)` random edges. The
/// stream depends on both `size` and `seed`.
pub fn data_graph(size: usize, seed: u64, labels: usize, avg_degree: f64) -> Graph {
    let edges = (size as f64 * avg_degree).round() as usize;
    let mut rng = generate::rng(seed ^ (size as u64).rotate_left(32));
    generate::random_graph(&mut rng, size, labels, edges)
}

/// Runs every (size, seed, semantics) combination in config order.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    run_bench_with(cfg, |_| {})
}

/// [`run_bench`] that hands each row to `progress` as soon as it is done.
pub fn run_bench_with(
    cfg: &BenchConfig,
    mut progress: impl FnMut(&BenchRow),
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &size in &cfg.sizes {
        for &seed in &cfg.seeds {
            let q = cfg.pattern_for(seed);
            let g = data_graph(size, seed, cfg.labels, cfg.avg_degree);
            for &semantics in &cfg.semantics {
                let start = Instant::now();
                let report = run_match(semantics, &q, &g, LocalityOptions::default())?;
                let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                let stats = report.stats.unwrap_or_default();
                let result_nodes = report
                    .results
                    .iter()
                    .flat_map(|r| r.nodes.iter().map(|n| n.id.as_str()))
                    .collect::<BTreeSet<_>>()
                    .len();
                let row = BenchRow {
                    pattern_nodes: q.node_count(),
                    data_nodes: g.node_count(),
                    data_edges: g.edge_count(),
                    semantics,
                    seed,
                    wall_ms,
                    passes: stats.passes,
                    lr_checks: stats.lr_checks,
                    augment_steps: stats.augment_steps,
                    result_nodes,
                };
                progress(&row);
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// CSV with header
/// `pattern_nodes,data_nodes,data_edges,semantics,seed,wall_ms,passes,lr_checks,augment_steps,result_nodes`.
pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `ln(wall_ms)` against `ln(data_nodes)`.
pub fn log_log_slope(points: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(n, t)| n > 0 && t > 0.0)
        .map(|&(n, t)| ((n as f64).ln(), t.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults() {
        let cfg = BenchConfig::from_toml_str("sizes = [10]\nsemantics = [\"triple\"]").unwrap();
        assert_eq!(cfg.seeds, vec![1]);
        assert_eq!(cfg.pattern, PatternSpec::LrBench);
    }

    #[test]
    fn pattern_tables() {
        let cfg = BenchConfig::from_toml_str(
            "sizes = [10]\nsemantics = [\"dual\"]\n[pattern]\nkind = \"lr-free\"\nnodes = 4\n",
        )
        .unwrap();
        assert_eq!(
            cfg.pattern,
            PatternSpec::LrFree {
                nodes: 4,
                extra_edges: 0
            }
        );
    }

    #[test]
    fn invalid_configs() {
        for text in [
            "sizes = []\nsemantics = [\"triple\"]",
            "sizes = [10]\nsemantics = [\"iso\"]",
            "sizes = [10]\nsemantics = [\"nope\"]",
            "sizes = [10]\nsemantics = [\"dual\"]\nbogus = 1",
            "sizes = [10]\nsemantics = [\"dual\"]\n[pattern]\nkind = \"lr-star\"\nmultiplicity = 0",
        ] {
            assert!(
                matches!(BenchConfig::from_toml_str(text), Err(Error::Config(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn row_accounting_and_csv() {
        let cfg = BenchConfig::from_toml_str(
            "sizes = [20, 40, 80]\nseeds = [1, 2]\nsemantics = [\"dual\", \"triple\"]",
        )
        .unwrap();
        let rows = run_bench(&cfg).unwrap();
        assert_eq!(rows.len(), 3 * 2 * 2);
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with(
            "pattern_nodes,data_nodes,data_edges,semantics,seed,wall_ms,passes,lr_checks,augment_steps,result_nodes\n"
        ));
        assert_eq!(text.lines().count(), 13);
        assert!(text.lines().nth(1).unwrap().contains(",dual,"));
    }

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(usize, f64)> = [1, 2, 4, 8]
            .iter()
            .map(|&n| (n * 1000, (n * n) as f64))
            .collect();
        assert!((log_log_slope(&pts).unwrap() - 2.0).abs() < 1e-9);
        assert!(log_log_slope(&pts[..1]).is_none());
    }
}

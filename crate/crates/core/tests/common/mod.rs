#![allow(dead_code)]

use std::path::PathBuf;

use triplesim_core::{io, Graph, PatternGraph};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn pattern(name: &str) -> PatternGraph {
    io::read_pattern(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn data(name: &str) -> Graph {
    io::read_graph(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn node_set<'a>(ids: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut v: Vec<String> = ids.into_iter().map(str::to_string).collect();
    v.sort();
    v.dedup();
    v
}

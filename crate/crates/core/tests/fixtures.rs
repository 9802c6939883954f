mod common;

use common::{data, node_set, pattern};
use triplesim_core::locality::match_plus;
use triplesim_core::oracle::{self, enumerate_isomorphisms};
use triplesim_core::simulation::{dual_simulation, strong_simulation};
use triplesim_core::triple_sim::{lr_checking, lr_checking_quantified, triple_simulation};
use triplesim_core::{maximum_matching, potential_matches, union_of, AuxStructures, SimRelation};

#[test]
fn potential_matches_of_bio() {
    let q = pattern("recommend_q1.graph");
    let g = data("recommend_data.graph");
    let pm = potential_matches(&q, &g, q.node("q1").unwrap());
    assert_eq!(node_set(pm.iter().map(|v| g.id(v))), ["d1", "d2"]);
}

#[test]
fn two_engineers_required() {
    let q = pattern("recommend_q1.graph");
    let g = data("recommend_data.graph");
    assert!(triple_simulation(&q, &g).is_none());
    assert!(enumerate_isomorphisms(&q, &g).unwrap().is_empty());
    assert!(!strong_simulation(&q, &g).unwrap().is_empty());
}

#[test]
fn strong_simulation_accepts_single_engineer() {
    let q = pattern("recommend_q1.graph");
    let g = data("recommend_data.graph");
    let results = strong_simulation(&q, &g).unwrap();
    // Both SE pattern nodes collapse onto the only SE child of d3.
    assert!(results
        .iter()
        .any(|r| r.contains_node("d1") && r.contains_node("d4")));
}

#[test]
fn dual_keeps_both_components() {
    let q = pattern("recommend_q2.graph");
    let g = data("recommend_data.graph");
    let rel = dual_simulation(&q, &g).unwrap().unwrap();
    let bio = rel.get(q.node("q1").unwrap());
    assert_eq!(node_set(bio.iter().map(|v| g.id(v))), ["d1", "d2"]);
}

#[test]
fn single_engineer_pattern_on_small_component() {
    let q = pattern("recommend_q2.graph");
    let g = data("recommend_g2.graph");
    let m = triple_simulation(&q, &g).unwrap();
    let pairs = m.relation.named_pairs(&q, &g);
    let want = [
        ("q1", "d1"),
        ("q2", "d3"),
        ("q4", "d4"),
        ("q5", "d5"),
        ("q6", "d6"),
    ];
    assert_eq!(
        pairs,
        want.iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect::<Vec<_>>()
    );
    assert_eq!(m.result.graph(), &g);
}

#[test]
fn lr_checking_on_phd_fixtures() {
    let q = pattern("phd_pattern.graph");
    for (file, verdict, size) in [("phd_g1.graph", false, 2), ("phd_g2.graph", true, 3)] {
        let g = data(file);
        let sim = dual_simulation(&q, &g).unwrap().unwrap();
        let aux = AuxStructures::init(&q, &g, &sim);
        let (u, v) = (q.node("q1").unwrap(), g.node("d1").unwrap());
        assert_eq!(lr_checking(&q, &g, &aux, &sim, u, v), verdict, "{file}");
        let insp = triplesim_core::triple_sim::inspect_children(&q, &g, &aux, &sim, u, v, false);
        assert_eq!(maximum_matching(&insp.graph).len(), size, "{file}");
    }
}

#[test]
fn quantified_lr_checking() {
    let q = pattern("quantified_pattern.graph");
    let run = |file: &str, q2: &[&str]| {
        let g = data(file);
        let mut pairs = vec![
            ("q1", "d1"),
            ("q3", "d4"),
            ("q3", "d5"),
            ("q4", "d4"),
            ("q4", "d5"),
        ];
        pairs.extend(q2.iter().map(|&d| ("q2", d)));
        pairs.push(("q5", "d6"));
        if g.index_of("d8").is_some() {
            pairs.push(("q5", "d8"));
        }
        let sim = SimRelation::from_named_pairs(&q, &g, &pairs).unwrap();
        let aux = AuxStructures::init(&q, &g, &sim);
        lr_checking_quantified(
            &q,
            &g,
            &aux,
            &sim,
            q.node("q1").unwrap(),
            g.node("d1").unwrap(),
        )
    };
    assert!(!run("quantified_data.graph", &["d3"]));
    assert!(run("quantified_data_two.graph", &["d3", "d7"]));
}

#[test]
fn quantified_triple_simulation() {
    let q = pattern("quantified_pattern.graph");
    assert!(triple_simulation(&q, &data("quantified_data.graph")).is_none());
    let g = data("quantified_data_two.graph");
    let m = triple_simulation(&q, &g).unwrap();
    assert_eq!(
        m.result.node_ids(),
        ["d1", "d3", "d4", "d5", "d6", "d7", "d8"]
    );
}

#[test]
fn locality_matches_global_when_everything_is_close() {
    let q = pattern("recommend_q1.graph");
    let g = data("recommend_g1_extended.graph");
    let global = triple_simulation(&q, &g).unwrap().result;
    assert_eq!(global.node_ids().len(), 8);
    assert_eq!(union_of(&match_plus(&q, &g)), global);
}

#[test]
fn locality_drops_distant_cycle() {
    let q = pattern("recommend_q1.graph");
    let g = data("long_cycle.graph");
    let global = triple_simulation(&q, &g).unwrap().result;
    for id in ["d9", "d10", "d11", "d12", "d14", "d15", "d16", "d17"] {
        assert!(global.contains_node(id), "{id}");
    }
    let local = match_plus(&q, &g);
    let expected = oracle::local_oracle(&q, &g, triplesim_core::triple_relation);
    assert_eq!(local, expected);
    assert_eq!(local.len(), 1);
    assert_eq!(local[0].node_ids(), ["d10", "d13", "d2", "d7", "d8", "d9"]);
    assert!(local[0].is_subgraph_of(global.graph()));
}

//! Tests against the real Gset files shipped in the repo cache.

mod common;

use common::{data_dir, load_gset};

use cutbench::instances::{
    instance_stats, load_instance, parse_gset, registry_lookup, ProblemType, REGISTRY,
};

#[test]
fn registry_shapes_match_the_files() {
    for meta in REGISTRY {
        let inst = load_gset(meta.id);
        assert_eq!(inst.n(), meta.n, "{} n", meta.id);
        assert_eq!(inst.m(), meta.m, "{} m", meta.id);
    }
}

#[test]
fn g65_is_a_four_regular_pm_one_grid() {
    let stats = instance_stats(&load_gset("G65"));
    assert_eq!(stats.min_degree, 4);
    assert_eq!(stats.max_degree, 4);
    let weights: Vec<i32> = stats.weight_histogram.iter().map(|&(w, _)| w).collect();
    assert_eq!(weights, vec![-1, 1]);
}

#[test]
fn g70_is_unweighted_with_9999_edges() {
    let stats = instance_stats(&load_gset("G70"));
    assert_eq!(stats.m, 9999);
    assert_eq!(stats.weight_histogram, vec![(1, 9999)]);
    assert_eq!(stats.total_weight, 9999);
    assert_eq!(
        registry_lookup("G70").unwrap().problem_type,
        ProblemType::SparseRandomUnweighted
    );
}

#[test]
fn toroidal_instances_are_four_regular() {
    for id in ["G66", "G67", "G72", "G77", "G81"] {
        let stats = instance_stats(&load_gset(id));
        assert_eq!((stats.min_degree, stats.max_degree), (4, 4), "{id}");
        let weights: Vec<i32> = stats.weight_histogram.iter().map(|&(w, _)| w).collect();
        assert_eq!(weights, vec![-1, 1], "{id}");
        assert_eq!(
            registry_lookup(id).unwrap().problem_type,
            ProblemType::ToroidalSpinGlass
        );
    }
}

#[test]
fn serializer_round_trips_registry_instances() {
    for id in ["G65", "G70", "G81"] {
        let inst = load_gset(id);
        let back = parse_gset(&inst.to_gset_text()).unwrap();
        assert_eq!(back.n(), inst.n());
        assert_eq!(back.edges(), inst.edges());
    }
}

#[test]
fn warm_cache_load_verifies_checksum() {
    // The repo cache carries .sha256 sidecars; loads go through the check.
    let inst = load_instance("G72", &data_dir(), true).unwrap();
    assert_eq!(inst.n(), 10_000);
    assert_eq!(inst.m(), 20_000);
}

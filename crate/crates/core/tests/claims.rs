mod common;

use lplab_core::claims::{
    build_fan_against_path, check_detached_fan_claim, check_endpoint_claims, check_gap_claims, check_graph,
    lemma_chain, rotation_fallback, RotationOutcome,
};
use lplab_core::connectivity::vertex_connectivity;
use lplab_core::families::tight_family;
use lplab_core::longest::longest_path_dfs;
use lplab_core::{Graph, Path};

#[test]
fn petersen_fan_against_nine_vertex_subpath() {
    let g = Graph::petersen();
    let c = longest_path_dfs(&g, None).unwrap();
    let ham = &c.paths[0];
    assert_eq!(ham.order(), 10);
    let sub = Path::new(&g, ham.vertices()[..9].to_vec()).unwrap();
    let q = ham.last();
    let fap = build_fan_against_path(&g, &sub, q, 3).unwrap();
    fap.fan.validate(&g).unwrap();
    assert_eq!(fap.k(), 3);
    let dists: Vec<usize> = (1..=3).map(|i| sub.dist(sub.first(), fap.v(i)).unwrap()).collect();
    assert!(dists.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn infeasible_fan_is_reported() {
    let g = Graph::path(5);
    let p = Path::new(&g, vec![0, 1, 2]).unwrap();
    assert!(build_fan_against_path(&g, &p, 4, 2).is_err());
}

#[test]
fn tight_family_claims_and_chain() {
    let f = tight_family(2, 1).unwrap();
    let g = &f.graph;
    let c = longest_path_dfs(g, None).unwrap();
    let p = &f.witness_p;
    for q in (0..g.n()).filter(|&v| !p.contains(v)) {
        let fap = build_fan_against_path(g, p, q, 2).unwrap();
        assert!(check_endpoint_claims(&fap, c.length).unwrap().passed());
        assert!(check_gap_claims(&fap, c.length).unwrap().passed());
        assert!(c.length >= 2 * fap.total_fan_length());
    }
    let q = f.witness_q.first();
    let fap = build_fan_against_path(g, p, q, 2).unwrap();
    assert!(check_detached_fan_claim(&fap, &f.witness_q).unwrap().passed());
    let chain = lemma_chain(&fap, &f.witness_q);
    assert!(chain.holds);
    assert_eq!(chain.x, 2);
}

#[test]
fn rotation_fallback_on_shared_extreme() {
    // In K_{2,6} every longest path starts on the large side; take Q with
    // an extreme inside X and check the disjunction.
    let f = tight_family(2, 1).unwrap();
    let g = &f.graph;
    let c = longest_path_dfs(g, None).unwrap();
    let p = &c.paths[0];
    let q = c
        .paths
        .iter()
        .find(|q| p.contains(q.first()) && q.vertex_set() != p.vertex_set())
        .unwrap();
    let outcome = rotation_fallback(g, p, q, q.first(), 2).unwrap();
    assert!(outcome.holds());
    if let RotationOutcome::Rotated { rotated, .. } = outcome {
        assert_eq!(rotated.vertex_set(), q.vertex_set());
    }
}

#[test]
fn sweep_over_small_corpus() {
    let mut graphs = 0;
    for e in common::families().iter().chain(&common::classics()) {
        let k = vertex_connectivity(&e.graph).unwrap();
        let c = longest_path_dfs(&e.graph, Some(300)).unwrap();
        if k < 2 || c.truncated {
            continue;
        }
        let s = check_graph(&e.graph, &c, k).unwrap();
        assert_eq!(s.failures(), 0, "{}: {s:?}", e.label);
        graphs += 1;
    }
    assert!(graphs >= 8);
}

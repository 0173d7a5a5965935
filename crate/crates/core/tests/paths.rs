mod common;

use lplab_core::path::{exchange, find_exchange_config, intersection, posa_rotate};
use lplab_core::{Error, Graph, Path};
use proptest::prelude::*;

/// A Hamiltonian path `0..n` plus a random chord set.
fn path_with_chords() -> impl Strategy<Value = (Graph, Path)> {
    (3usize..12).prop_flat_map(|n| {
        let chords: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 2..n).map(move |v| (u, v))).collect();
        proptest::sample::subsequence(chords.clone(), 0..=chords.len()).prop_map(move |extra| {
            let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
            edges.extend(extra);
            let g = Graph::new(n, edges).unwrap();
            let p = Path::new(&g, (0..n).collect()).unwrap();
            (g, p)
        })
    })
}

proptest! {
    #[test]
    fn rotation_keeps_vertex_set_and_length((g, q) in path_with_chords()) {
        for &r in g.neighbors(q.first()) {
            match posa_rotate(&g, &q, r) {
                Ok(rot) => {
                    prop_assert_eq!(rot.vertex_set(), q.vertex_set());
                    prop_assert_eq!(rot.len(), q.len());
                    prop_assert_eq!(rot.last(), q.last());
                    prop_assert!(g.has_edge(q.first(), r));
                }
                Err(e) => prop_assert_eq!(e, Error::DegenerateRotation(r)),
            }
        }
    }

    #[test]
    fn exchange_length_identity(seed in any::<u64>()) {
        let (g, cfg) = common::synthetic_exchange(seed);
        cfg.validate().unwrap();
        let (p2, q2) = exchange(&g, &cfg).unwrap();
        prop_assert_eq!(p2.len() + q2.len(), cfg.p.len() + cfg.q.len() + 2 * cfg.r.len());
        // The synthetic configuration is always discoverable.
        prop_assert!(find_exchange_config(&g, &cfg.p, &cfg.q).is_some());
    }

    #[test]
    fn intersection_identity((g, p) in path_with_chords(), a in 0usize..12, b in 0usize..12) {
        let n = g.n();
        let (a, b) = (a % n, b % n);
        let (lo, hi) = (a.min(b), a.max(b));
        let q = p.subpath(lo, hi).unwrap();
        let union: std::collections::BTreeSet<usize> = p.vertex_set().union(&q.vertex_set()).copied().collect();
        prop_assert_eq!(intersection(&p, &q).len(), p.order() + q.order() - union.len());
        prop_assert_eq!(q.len(), p.dist(lo, hi).unwrap());
    }
}

#[test]
fn rotation_example() {
    let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 3)]).unwrap();
    let q = Path::new(&g, vec![0, 1, 2, 3, 4]).unwrap();
    assert_eq!(posa_rotate(&g, &q, 3).unwrap().vertices(), &[2, 1, 0, 3, 4]);
    assert!(matches!(posa_rotate(&g, &q, 4), Err(Error::NotNeighbor { .. })));
}

#[test]
fn invalid_paths_are_rejected() {
    let g = Graph::path(4);
    assert!(matches!(Path::new(&g, vec![0, 2]), Err(Error::InvalidPath(_))));
    assert!(matches!(Path::new(&g, vec![0, 1, 0]), Err(Error::InvalidPath(_))));
    assert!(Path::new(&g, vec![]).is_err());
}

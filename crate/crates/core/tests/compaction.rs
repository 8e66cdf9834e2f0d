mod common;

use common::{random_inactive, rebuild_active};
use hypermatch::io::{generate_random, SizeDist};
use hypermatch::{compact, Hypergraph};
use proptest::prelude::*;

fn assert_matches_rebuild(h: &Hypergraph, edge_active: &[bool], vertex_active: &[bool]) {
    let c = compact(h, edge_active, vertex_active).unwrap();
    let (rebuilt, vmap, emap) = rebuild_active(h, edge_active, vertex_active);
    assert_eq!(c.hypergraph, rebuilt);
    assert!(c.hypergraph.validate().is_valid());
    for (old, new) in vmap.iter().enumerate() {
        assert_eq!(c.vertex_map.get(old as u32), *new);
    }
    for (old, new) in emap.iter().enumerate() {
        assert_eq!(c.edge_map.get(old as u32), *new);
    }
    for (new, &old) in c.kept_edges.iter().enumerate() {
        let mapped: Vec<u32> = h
            .edge(old)
            .iter()
            .map(|&v| c.vertex_map.get(v).unwrap())
            .collect();
        assert_eq!(c.hypergraph.edge(new as u32), mapped.as_slice());
    }
}

#[test]
fn hundred_random_subsets() {
    for seed in 0..100u64 {
        let h = common::medium(seed, 20 + seed as usize * 50);
        let (e, v) = random_inactive(&h, seed);
        assert_matches_rebuild(&h, &e, &v);
    }
}

#[test]
fn rejects_active_edge_on_inactive_vertex() {
    let h = common::medium(1, 30);
    let mut v = vec![true; h.num_vertices()];
    v[h.edge(0)[0] as usize] = false;
    assert!(compact(&h, &vec![true; h.num_edges()], &v).is_err());
}

proptest! {
    #[test]
    fn compaction_equals_rebuild(n in 5usize..60, m in 1usize..120, seed in any::<u64>()) {
        let h = generate_random(n, m, SizeDist::uniform(1, 5), seed).unwrap();
        let (e, v) = random_inactive(&h, seed.wrapping_add(1));
        assert_matches_rebuild(&h, &e, &v);
    }
}

//! Oracles written against the definitions, sharing no code with the library
//! beyond reading a hypergraph's edge lists.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use hypermatch::io::{apply_weight_policy, generate_random, SizeDist, WeightPolicy};
use hypermatch::{EdgeId, Hypergraph, IsolatedVertices, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn edge_lists(h: &Hypergraph) -> Vec<Vec<VertexId>> {
    h.edges().map(|e| e.to_vec()).collect()
}

fn intersects(a: &[VertexId], b: &[VertexId]) -> bool {
    a.iter().any(|v| b.contains(v))
}

/// Small random instance with integer weights in [1, 100].
pub fn small_weighted(seed: u64, max_edges: usize) -> Hypergraph {
    let mut r = rng(seed);
    let m = r.random_range(1..=max_edges);
    let rank = r.random_range(1..=4usize);
    let n = r.random_range(rank.max(2)..=(2 * m).max(rank + 1));
    let h = generate_random(n, m, SizeDist::uniform(1, rank), seed).unwrap();
    apply_weight_policy(h, WeightPolicy::Random1To100(seed))
}

/// Random instance of `m` edges with sizes in [2, 5] and a vertex count
/// drawn around `m`.
pub fn medium(seed: u64, m: usize) -> Hypergraph {
    let mut r = rng(seed ^ 0xabcd);
    let n = r.random_range((m / 2).max(5)..=(2 * m).max(6));
    generate_random(n, m, SizeDist::uniform(2, 5), seed).unwrap()
}

/// Maximum matching weight and the lexicographically smallest optimal edge
/// set, by enumerating every subset of edges.
pub fn naive_optimum(h: &Hypergraph) -> (f64, Vec<EdgeId>) {
    let edges = edge_lists(h);
    let m = edges.len();
    assert!(m <= 20, "naive enumeration over {m} edges");
    let mut best = (0.0f64, Vec::new());
    for mask in 1u32..(1 << m) {
        let set: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let disjoint = set.iter().enumerate().all(|(k, &a)| {
            set[k + 1..]
                .iter()
                .all(|&b| !intersects(&edges[a], &edges[b]))
        });
        if !disjoint {
            continue;
        }
        let w: f64 = set.iter().map(|&e| h.weight(e as EdgeId)).sum();
        let ids: Vec<EdgeId> = set.iter().map(|&e| e as EdgeId).collect();
        let tol = 1e-9 * best.0.max(1.0);
        if w > best.0 + tol || (w >= best.0 - tol && ids < best.1) {
            best = (best.0.max(w), ids);
        }
    }
    best
}

/// (disjoint, maximal, weight) straight from the definitions.
pub fn check_matching(h: &Hypergraph, chosen: &[EdgeId]) -> (bool, bool, f64) {
    let edges = edge_lists(h);
    let mut disjoint = true;
    for (i, &a) in chosen.iter().enumerate() {
        for &b in &chosen[i + 1..] {
            if a == b || intersects(&edges[a as usize], &edges[b as usize]) {
                disjoint = false;
            }
        }
    }
    let set: HashSet<EdgeId> = chosen.iter().copied().collect();
    let maximal = (0..edges.len() as EdgeId)
        .filter(|e| !set.contains(e))
        .all(|e| {
            chosen
                .iter()
                .any(|&f| intersects(&edges[e as usize], &edges[f as usize]))
        });
    let weight = set.iter().map(|&e| h.weight(e)).sum();
    (disjoint, maximal, weight)
}

/// (n, m, kappa, max degree, rank) recounted from raw edge lists.
pub fn recount(edges: &[Vec<VertexId>]) -> (usize, usize, usize, usize, usize) {
    let mut degree: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in edges {
        for &v in e {
            *degree.entry(v).or_default() += 1;
        }
    }
    let kappa = edges.iter().map(Vec::len).sum();
    let rank = edges.iter().map(Vec::len).max().unwrap_or(0);
    let max_degree = degree.values().copied().max().unwrap_or(0);
    (degree.len(), edges.len(), kappa, max_degree, rank)
}

/// Line-graph adjacency by testing every pair of edges.
pub fn brute_line_graph(h: &Hypergraph) -> Vec<Vec<EdgeId>> {
    let edges = edge_lists(h);
    (0..edges.len())
        .map(|a| {
            (0..edges.len())
                .filter(|&b| b != a && intersects(&edges[a], &edges[b]))
                .map(|b| b as EdgeId)
                .collect()
        })
        .collect()
}

/// Random activity flags closed under the compaction precondition: every
/// edge that touches an inactive vertex is inactive.
pub fn random_inactive(h: &Hypergraph, seed: u64) -> (Vec<bool>, Vec<bool>) {
    let mut r = rng(seed);
    let p_vertex = r.random_range(0.0..0.5);
    let p_edge = r.random_range(0.0..0.5);
    let vertex_active: Vec<bool> = (0..h.num_vertices())
        .map(|_| !r.random_bool(p_vertex))
        .collect();
    let edge_active = h
        .edges()
        .map(|e| e.iter().all(|&v| vertex_active[v as usize]) && !r.random_bool(p_edge))
        .collect();
    (edge_active, vertex_active)
}

/// The active sub-hypergraph built from scratch, with old-to-new maps.
pub fn rebuild_active(
    h: &Hypergraph,
    edge_active: &[bool],
    vertex_active: &[bool],
) -> (Hypergraph, Vec<Option<u32>>, Vec<Option<u32>>) {
    let kept: Vec<usize> = (0..h.num_edges()).filter(|&e| edge_active[e]).collect();
    let used: BTreeSet<VertexId> = kept
        .iter()
        .flat_map(|&e| h.edge(e as EdgeId).iter().copied())
        .filter(|&v| vertex_active[v as usize])
        .collect();
    let mut vmap = vec![None; h.num_vertices()];
    for (new, &old) in used.iter().enumerate() {
        vmap[old as usize] = Some(new as u32);
    }
    let mut emap = vec![None; h.num_edges()];
    for (new, &old) in kept.iter().enumerate() {
        emap[old] = Some(new as u32);
    }
    let edges: Vec<Vec<VertexId>> = kept
        .iter()
        .map(|&e| {
            h.edge(e as EdgeId)
                .iter()
                .map(|&v| vmap[v as usize].unwrap())
                .collect()
        })
        .collect();
    let weights: Vec<f64> = kept.iter().map(|&e| h.weight(e as EdgeId)).collect();
    let rebuilt = Hypergraph::from_edges(
        Some(used.len()),
        &edges,
        Some(&weights),
        IsolatedVertices::Reject,
    )
    .unwrap();
    (rebuilt, vmap, emap)
}

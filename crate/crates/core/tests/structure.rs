mod common;

use common::{brute_line_graph, edge_lists, recount, rng};
use hypermatch::io::{generate_random, generate_tight_family, SizeDist};
use hypermatch::{build_hypergraph, build_line_graph, compute_stats, Hypergraph, IsolatedVertices};
use rand::Rng;

#[test]
fn stats_match_recount() {
    for seed in 0..100 {
        let h = common::medium(seed, 1 + seed as usize * 3);
        let s = compute_stats(&h);
        let (n, m, kappa, max_degree, rank) = recount(&edge_lists(&h));
        assert_eq!(
            (s.n, s.m, s.kappa, s.max_degree, s.rank),
            (n, m, kappa, max_degree, rank)
        );
        assert!(s.kappa <= (s.max_degree * s.n).min(s.rank * s.m));
        let degree_sum: usize = (0..h.num_vertices() as u32).map(|v| h.degree(v)).sum();
        assert_eq!(degree_sum, s.kappa);
        assert_eq!(compute_stats(&h), s);
    }
}

#[test]
fn three_uniform_recount() {
    let h = generate_random(10, 8, SizeDist::fixed(3), 4).unwrap();
    let s = h.stats();
    assert_eq!(
        (s.n, s.m, s.kappa, s.max_degree, s.rank),
        recount(&edge_lists(&h))
    );
    assert_eq!(s.kappa, 24);
}

#[test]
fn tight_family_stats() {
    let h = generate_tight_family(3, 0.1).unwrap();
    let s = h.stats();
    assert_eq!((s.n, s.m, s.kappa, s.max_degree, s.rank), (6, 4, 9, 2, 3));
}

#[test]
fn line_graph_matches_pairwise_intersection() {
    for seed in 0..40 {
        let m = if seed < 20 { 20 } else { 200 };
        let h = common::medium(seed, m);
        let lg = build_line_graph(&h);
        let brute = brute_line_graph(&h);
        assert_eq!(lg.num_nodes(), h.num_edges());
        for (a, expected) in brute.iter().enumerate() {
            assert_eq!(
                lg.neighbors(a as u32),
                expected.as_slice(),
                "seed {seed} node {a}"
            );
        }
    }
}

#[test]
fn tight_family_line_graph_is_a_star() {
    let lg = build_line_graph(&generate_tight_family(3, 0.1).unwrap());
    assert_eq!(lg.neighbors(3), &[0, 1, 2]);
    for pair in 0..3 {
        assert_eq!(lg.neighbors(pair), &[3]);
    }
}

#[test]
fn parallel_edges_are_distinct() {
    let h = build_hypergraph(&[vec![0, 1], vec![0, 1]], None, IsolatedVertices::Reject).unwrap();
    assert_eq!(h.num_edges(), 2);
    assert!(h.validate().is_valid());
    assert_eq!(build_line_graph(&h).neighbors(0), &[1]);
}

/// One structural corruption of a valid instance, chosen by `kind`.
fn corrupt(h: &Hypergraph, kind: usize, r: &mut impl Rng) -> Hypergraph {
    let (mut vo, mut vi, mut eo, mut em, mut w) = h.clone().into_raw_parts();
    let (n, m) = (vo.len() - 1, eo.len() - 1);
    match kind {
        0 => {
            let i = r.random_range(0..em.len());
            em[i] = (em[i] + r.random_range(1..n as u32)) % n as u32;
        }
        1 => {
            let i = r.random_range(0..vi.len());
            vi[i] = (vi[i] + r.random_range(1..m as u32)) % m as u32;
        }
        2 => {
            let i = r.random_range(0..em.len());
            em[i] = n as u32 + r.random_range(0..5);
        }
        3 => {
            let e = r.random_range(0..m);
            w[e] = [0.0, -1.0, f64::NAN, f64::INFINITY][r.random_range(0..4)];
        }
        4 => {
            // move one pin across an internal edge boundary
            let k = r.random_range(1..m);
            if eo[k] < eo[k + 1] && r.random_bool(0.5) {
                eo[k] += 1;
            } else {
                eo[k] -= 1;
            }
        }
        5 => {
            let last = vo.len() - 1;
            vo[last] += 1;
        }
        6 => {
            let k = r.random_range(1..m);
            eo[k] = eo[k + 1] + 1;
        }
        7 => {
            w.pop();
        }
        8 => {
            em.pop();
            *eo.last_mut().unwrap() -= 1;
        }
        _ => {
            // vertex that no edge references
            vo.push(*vo.last().unwrap());
        }
    }
    Hypergraph::from_raw_parts(vo, vi, eo, em, w)
}

#[test]
fn every_corruption_is_detected() {
    let mut r = rng(77);
    for seed in 0..50 {
        let h = generate_random(30, 25, SizeDist::uniform(2, 4), seed).unwrap();
        assert!(h.validate().is_valid());
        for kind in 0..10 {
            for _ in 0..5 {
                let bad = corrupt(&h, kind, &mut r);
                let report = bad.validate();
                assert!(!report.is_valid(), "seed {seed} kind {kind} undetected");
            }
        }
    }
}

#[test]
fn one_sided_incidence_is_reported() {
    let h = build_hypergraph(&[vec![0, 7], vec![7, 3]], None, IsolatedVertices::Drop).unwrap();
    let (vo, mut vi, eo, em, w) = h.into_raw_parts();
    // vertex 7 is renumbered to 2; drop edge 0 from its incidence
    let seg = vo[2]..vo[3];
    assert_eq!(&vi[seg.clone()], &[0, 1]);
    vi[seg.start] = 1;
    let report = Hypergraph::from_raw_parts(vo, vi, eo, em, w).validate();
    assert!(report.violations.iter().any(|v| matches!(
        v,
        hypermatch::Violation::Inconsistent { vertex: 2, edge: 0 }
    )));
}

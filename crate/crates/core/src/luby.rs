//! Luby-style maximal independent set on the line graph.
//!
//! Node `i` of the line graph carries the weight the stream assigns to
//! hyperedge `i` in each round. A node is selected when it beats every
//! remaining neighbor; selected nodes and their neighbors are then removed.
//! The per-round selections coincide with the edges the local-max matchers
//! match per round.

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph};
use crate::line_graph::build_line_graph;
use crate::rng::WeightStream;

/// Largest edge count for which the line graph is materialized.
pub const LUBY_EDGE_LIMIT: usize = 500;

/// Selected line-graph nodes (hyperedge ids, ascending) per round.
pub fn luby_line_graph(h: &Hypergraph, stream: &WeightStream) -> Result<Vec<Vec<EdgeId>>> {
    luby_line_graph_capped(h, stream, LUBY_EDGE_LIMIT)
}

pub fn luby_line_graph_capped(
    h: &Hypergraph,
    stream: &WeightStream,
    limit: usize,
) -> Result<Vec<Vec<EdgeId>>> {
    let m = h.num_edges();
    if m > limit {
        return Err(Error::TooLarge {
            what: "edges for the line graph",
            got: m,
            limit,
        });
    }
    let lg = build_line_graph(h);
    let mut alive = vec![true; m];
    let mut remaining = m;
    let mut weights = vec![0.0; m];
    let mut rounds = Vec::new();
    let mut round = 0;
    while remaining > 0 {
        for e in (0..m).filter(|&e| alive[e]) {
            weights[e] = stream.value(e as EdgeId, h.weight(e as EdgeId), round);
        }
        let selected: Vec<EdgeId> = (0..m as EdgeId)
            .filter(|&a| alive[a as usize])
            .filter(|&a| {
                lg.neighbors(a).iter().all(|&b| {
                    !alive[b as usize]
                        || stream
                            .compare(round, weights[a as usize], a, weights[b as usize], b)
                            .is_gt()
                })
            })
            .collect();
        for &a in &selected {
            for &b in std::iter::once(&a).chain(lg.neighbors(a)) {
                if std::mem::replace(&mut alive[b as usize], false) {
                    remaining -= 1;
                }
            }
        }
        rounds.push(selected);
        round += 1;
    }
    Ok(rounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{build_hypergraph, IsolatedVertices};

    #[test]
    fn isolated_nodes_selected_first_round() {
        let h =
            build_hypergraph(&[vec![0, 1], vec![2, 3]], None, IsolatedVertices::Reject).unwrap();
        let r = luby_line_graph(&h, &WeightStream::default()).unwrap();
        assert_eq!(r, vec![vec![0, 1]]);
    }

    #[test]
    fn tight_family() {
        let h = build_hypergraph(
            &[vec![0, 3], vec![1, 4], vec![2, 5], vec![0, 1, 2]],
            Some(&[1.0, 1.0, 1.0, 1.1]),
            IsolatedVertices::Reject,
        )
        .unwrap();
        let r = luby_line_graph(&h, &WeightStream::zero_noise(0)).unwrap();
        assert_eq!(r, vec![vec![3]]);
    }

    #[test]
    fn refuses_large_instances() {
        let edges: Vec<Vec<u32>> = (0..10).map(|i| vec![i]).collect();
        let h = build_hypergraph(&edges, None, IsolatedVertices::Reject).unwrap();
        assert!(matches!(
            luby_line_graph_capped(&h, &WeightStream::default(), 5),
            Err(Error::TooLarge { .. })
        ));
    }
}

use crate::hypergraph::{EdgeId, Hypergraph};

/// Intersection graph of the hyperedges: one node per hyperedge, adjacent
/// iff the two hyperedges share a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineGraph {
    adjacency: Vec<Vec<EdgeId>>,
}

impl LineGraph {
    pub fn num_nodes(&self) -> usize {
        self.adjacency.len()
    }

    /// Sorted, without self loops.
    pub fn neighbors(&self, node: EdgeId) -> &[EdgeId] {
        &self.adjacency[node as usize]
    }

    pub fn num_links(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// Size is quadratic in the maximum degree; callers gate by instance size.
pub fn build_line_graph(h: &Hypergraph) -> LineGraph {
    let adjacency = (0..h.num_edges() as EdgeId)
        .map(|a| {
            let mut adj: Vec<EdgeId> = h
                .edge(a)
                .iter()
                .flat_map(|&v| h.incident(v).iter().copied())
                .filter(|&b| b != a)
                .collect();
            adj.sort_unstable();
            adj.dedup();
            adj
        })
        .collect();
    LineGraph { adjacency }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{build_hypergraph, IsolatedVertices};

    #[test]
    fn disjoint_edges_are_isolated() {
        let h =
            build_hypergraph(&[vec![0, 1], vec![2, 3]], None, IsolatedVertices::Reject).unwrap();
        let l = build_line_graph(&h);
        assert_eq!(l.num_nodes(), 2);
        assert!(l.neighbors(0).is_empty() && l.neighbors(1).is_empty());
    }

    #[test]
    fn tight_family_is_a_star() {
        let edges = vec![vec![0, 3], vec![1, 4], vec![2, 5], vec![0, 1, 2]];
        let h = build_hypergraph(&edges, None, IsolatedVertices::Reject).unwrap();
        let l = build_line_graph(&h);
        assert_eq!(l.neighbors(3), &[0, 1, 2]);
        for i in 0..3 {
            assert_eq!(l.neighbors(i), &[3]);
        }
        assert_eq!(l.num_links(), 3);
    }
}

//! Removal of inactive vertices and edges from the incidence structure.
//!
//! New ids come from exclusive prefix sums over the keep flags, so surviving
//! vertices and edges keep their relative order. Every step is a parallel
//! sweep over either the old or the new structure.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::scan::{exclusive_scan_with, pack_indices, par_fill_segments};

/// Old-to-new id translation; removed ids map to `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdMap {
    map: Vec<u32>,
    kept: usize,
}

const REMOVED: u32 = u32::MAX;

impl IdMap {
    pub fn identity(n: usize) -> Self {
        IdMap {
            map: (0..n as u32).collect(),
            kept: n,
        }
    }

    #[inline]
    pub fn get(&self, old: u32) -> Option<u32> {
        match self.map[old as usize] {
            REMOVED => None,
            new => Some(new),
        }
    }

    /// Number of old ids.
    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Number of surviving ids.
    pub fn kept(&self) -> usize {
        self.kept
    }
}

#[derive(Clone, Debug)]
pub struct Compaction {
    pub hypergraph: Hypergraph,
    pub vertex_map: IdMap,
    pub edge_map: IdMap,
    /// Surviving old edge id for each new edge id.
    pub kept_edges: Vec<EdgeId>,
    pub pin_visits: usize,
    pub edge_visits: usize,
    pub prefix_sums: usize,
}

/// Keeps the active edges and every active vertex still covered by one.
///
/// Requires that no active edge contains an inactive vertex.
pub fn compact(h: &Hypergraph, edge_active: &[bool], vertex_active: &[bool]) -> Result<Compaction> {
    let (n, m) = (h.num_vertices(), h.num_edges());
    if edge_active.len() != m {
        return Err(Error::LengthMismatch {
            what: "edge flags",
            got: edge_active.len(),
            expected: m,
        });
    }
    if vertex_active.len() != n {
        return Err(Error::LengthMismatch {
            what: "vertex flags",
            got: vertex_active.len(),
            expected: n,
        });
    }

    let edge_prefix = exclusive_scan_with(m, |e| edge_active[e] as usize);
    let kept_edges = pack_indices(m, &edge_prefix, |e| edge_active[e]);

    // surviving degree of each old vertex
    let new_degree: Vec<usize> = (0..n)
        .into_par_iter()
        .map(|v| {
            if !vertex_active[v] {
                return 0;
            }
            h.incident(v as VertexId)
                .iter()
                .filter(|&&e| edge_active[e as usize])
                .count()
        })
        .collect();
    let scanned_incidence: usize = (0..n)
        .into_par_iter()
        .filter(|&v| vertex_active[v])
        .map(|v| h.degree(v as VertexId))
        .sum();

    let vertex_prefix = exclusive_scan_with(n, |v| (new_degree[v] > 0) as usize);
    let kept_vertices = pack_indices(n, &vertex_prefix, |v| new_degree[v] > 0);

    let vertex_map = id_map(n, &vertex_prefix, &kept_vertices);
    let edge_map = id_map(m, &edge_prefix, &kept_edges);

    let vertex_offsets = exclusive_scan_with(kept_vertices.len(), |nv| {
        new_degree[kept_vertices[nv] as usize]
    });
    let mut vertex_incidence = vec![0 as EdgeId; vertex_offsets[kept_vertices.len()]];
    par_fill_segments(&mut vertex_incidence, &vertex_offsets, |nv, seg| {
        let old = kept_vertices[nv];
        let mapped = h
            .incident(old)
            .iter()
            .filter(|&&e| edge_active[e as usize])
            .map(|&e| edge_map.map[e as usize]);
        for (slot, e) in seg.iter_mut().zip(mapped) {
            *slot = e;
        }
    });

    let edge_offsets = exclusive_scan_with(kept_edges.len(), |ne| h.edge_size(kept_edges[ne]));
    let mut edge_members = vec![0 as VertexId; edge_offsets[kept_edges.len()]];
    let first_bad = AtomicUsize::new(usize::MAX);
    par_fill_segments(&mut edge_members, &edge_offsets, |ne, seg| {
        for (slot, &v) in seg.iter_mut().zip(h.edge(kept_edges[ne])) {
            let new = vertex_map.map[v as usize];
            if new == REMOVED {
                first_bad.fetch_min(ne, Ordering::Relaxed);
            }
            *slot = new;
        }
    });
    let bad = first_bad.into_inner();
    if bad != usize::MAX {
        let edge = kept_edges[bad];
        let vertex = *h
            .edge(edge)
            .iter()
            .find(|&&v| vertex_map.map[v as usize] == REMOVED)
            .unwrap();
        return Err(Error::InactiveVertexInActiveEdge { edge, vertex });
    }

    let base_weights: Vec<f64> = kept_edges.par_iter().map(|&e| h.weight(e)).collect();
    let kappa = edge_members.len();
    let pin_visits = scanned_incidence + 2 * kappa;
    let edge_visits = m + kept_edges.len();
    Ok(Compaction {
        hypergraph: Hypergraph::from_raw_parts(
            vertex_offsets,
            vertex_incidence,
            edge_offsets,
            edge_members,
            base_weights,
        ),
        vertex_map,
        edge_map,
        kept_edges,
        pin_visits,
        edge_visits,
        prefix_sums: 4,
    })
}

fn id_map(n: usize, prefix: &[usize], kept: &[u32]) -> IdMap {
    let mut map = vec![REMOVED; n];
    // kept ids are distinct, so the scatter is exclusive
    let scattered: Vec<(u32, u32)> = kept
        .par_iter()
        .map(|&old| (old, prefix[old as usize] as u32))
        .collect();
    for (old, new) in scattered {
        map[old as usize] = new;
    }
    IdMap {
        map,
        kept: kept.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{build_hypergraph, IsolatedVertices};

    fn tight3() -> Hypergraph {
        build_hypergraph(
            &[vec![0, 3], vec![1, 4], vec![2, 5], vec![0, 1, 2]],
            Some(&[1.0, 1.0, 1.0, 1.1]),
            IsolatedVertices::Reject,
        )
        .unwrap()
    }

    #[test]
    fn nothing_inactive_is_identity() {
        let h = tight3();
        let c = compact(&h, &[true; 4], &[true; 6]).unwrap();
        assert_eq!(c.hypergraph, h);
        assert_eq!(c.vertex_map, IdMap::identity(6));
        assert_eq!(c.edge_map, IdMap::identity(4));
    }

    #[test]
    fn tight_family_after_matching_is_empty() {
        let h = tight3();
        // big edge matched: x vertices retired, all pair edges deactivated
        let c = compact(&h, &[false; 4], &[false, false, false, true, true, true]).unwrap();
        assert!(c.hypergraph.is_empty());
        assert_eq!(c.hypergraph.num_vertices(), 0);
        assert!(c.hypergraph.validate().is_valid());
    }

    #[test]
    fn keeps_one_pair_edge() {
        let h = tight3();
        let c = compact(&h, &[false, true, false, false], &[true; 6]).unwrap();
        assert_eq!(c.hypergraph.num_edges(), 1);
        assert_eq!(c.hypergraph.num_vertices(), 2);
        assert_eq!(c.hypergraph.edge(0), &[0, 1]);
        assert_eq!(c.vertex_map.get(1), Some(0));
        assert_eq!(c.vertex_map.get(4), Some(1));
        assert_eq!(c.vertex_map.get(0), None);
        assert_eq!(c.edge_map.get(1), Some(0));
        assert_eq!(c.kept_edges, vec![1]);
        assert!(c.hypergraph.validate().is_valid());
    }

    #[test]
    fn rejects_active_edge_with_inactive_vertex() {
        let h = tight3();
        let err = compact(&h, &[true; 4], &[true, true, true, false, true, true]).unwrap_err();
        assert!(matches!(
            err,
            Error::InactiveVertexInActiveEdge { edge: 0, vertex: 3 }
        ));
    }
}

//! Bidirectional CSR incidence structure for hypergraphs.
//!
//! A hypergraph is stored as two offset/index array pairs: for every vertex the
//! range `vertex_offsets[v]..vertex_offsets[v + 1]` of `vertex_incidence` lists
//! the edges containing `v`, and for every edge the range
//! `edge_offsets[e]..edge_offsets[e + 1]` of `edge_members` lists its vertices.
//! Edge weights live in a parallel array so each field can be swept
//! independently.

use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;

/// What to do with vertex ids that no edge references.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IsolatedVertices {
    #[default]
    Reject,
    /// Drop them and renumber the remaining vertices densely, keeping order.
    Drop,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hypergraph {
    vertex_offsets: Vec<usize>,
    vertex_incidence: Vec<EdgeId>,
    edge_offsets: Vec<usize>,
    edge_members: Vec<VertexId>,
    base_weights: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypergraphStats {
    pub n: usize,
    pub m: usize,
    /// Sum of vertex degrees, equal to the sum of edge sizes.
    pub kappa: usize,
    /// Maximum vertex degree.
    pub max_degree: usize,
    /// Maximum edge size.
    pub rank: usize,
}

impl Hypergraph {
    /// The hypergraph with no vertices and no edges.
    pub fn empty() -> Self {
        Hypergraph {
            vertex_offsets: vec![0],
            vertex_incidence: Vec::new(),
            edge_offsets: vec![0],
            edge_members: Vec::new(),
            base_weights: Vec::new(),
        }
    }

    /// Builds a hypergraph from edge vertex lists.
    ///
    /// When `num_vertices` is `None` the vertex count is one past the largest
    /// referenced id. Missing weights default to 1.
    pub fn from_edges<E: AsRef<[VertexId]>>(
        num_vertices: Option<usize>,
        edges: &[E],
        weights: Option<&[f64]>,
        isolated: IsolatedVertices,
    ) -> Result<Self> {
        let m = edges.len();
        if m > EdgeId::MAX as usize {
            return Err(Error::TooLarge {
                what: "edges",
                got: m,
                limit: EdgeId::MAX as usize,
            });
        }
        let base_weights = match weights {
            Some(w) => {
                if w.len() != m {
                    return Err(Error::LengthMismatch {
                        what: "weights",
                        got: w.len(),
                        expected: m,
                    });
                }
                if let Some((edge, &weight)) = w
                    .iter()
                    .enumerate()
                    .find(|(_, w)| !(w.is_finite() && **w > 0.0))
                {
                    return Err(Error::BadWeight { edge, weight });
                }
                w.to_vec()
            }
            None => vec![1.0; m],
        };

        let max_id = edges
            .iter()
            .flat_map(|e| e.as_ref().iter())
            .map(|&v| v as usize + 1)
            .max()
            .unwrap_or(0);
        let n = match num_vertices {
            Some(n) if max_id > n => {
                return Err(Error::VertexOutOfRange {
                    vertex: max_id - 1,
                    num_vertices: n,
                })
            }
            Some(n) => n,
            None => max_id,
        };
        if n > VertexId::MAX as usize {
            return Err(Error::TooLarge {
                what: "vertices",
                got: n,
                limit: VertexId::MAX as usize,
            });
        }

        // stamp[v] == e + 1 iff v was already seen in edge e
        let mut stamp = vec![0usize; n];
        let mut degree = vec![0usize; n];
        let mut edge_offsets = Vec::with_capacity(m + 1);
        edge_offsets.push(0);
        let kappa: usize = edges.iter().map(|e| e.as_ref().len()).sum();
        let mut edge_members = Vec::with_capacity(kappa);
        for (i, edge) in edges.iter().enumerate() {
            let edge = edge.as_ref();
            if edge.is_empty() {
                return Err(Error::EmptyEdge(i));
            }
            for &v in edge {
                let slot = &mut stamp[v as usize];
                if *slot == i + 1 {
                    return Err(Error::DuplicateVertex { edge: i, vertex: v });
                }
                *slot = i + 1;
                degree[v as usize] += 1;
            }
            edge_members.extend_from_slice(edge);
            edge_offsets.push(edge_members.len());
        }

        if degree.contains(&0) {
            match isolated {
                IsolatedVertices::Reject => {
                    let v = degree.iter().position(|&d| d == 0).unwrap();
                    return Err(Error::IsolatedVertex(v as VertexId));
                }
                IsolatedVertices::Drop => {
                    let mut remap = vec![VertexId::MAX; n];
                    let mut next = 0;
                    for (v, &d) in degree.iter().enumerate() {
                        if d > 0 {
                            remap[v] = next;
                            next += 1;
                        }
                    }
                    for v in edge_members.iter_mut() {
                        *v = remap[*v as usize];
                    }
                    degree.retain(|&d| d > 0);
                }
            }
        }

        let vertex_offsets = exclusive_offsets(&degree);
        let vertex_incidence = invert(&edge_offsets, &edge_members, &vertex_offsets);
        Ok(Hypergraph {
            vertex_offsets,
            vertex_incidence,
            edge_offsets,
            edge_members,
            base_weights,
        })
    }

    /// Assembles a hypergraph from raw arrays without checking any invariant.
    ///
    /// Use [`Hypergraph::validate`] on the result when the arrays come from an
    /// untrusted source. Accessors may panic on inconsistent offsets.
    pub fn from_raw_parts(
        vertex_offsets: Vec<usize>,
        vertex_incidence: Vec<EdgeId>,
        edge_offsets: Vec<usize>,
        edge_members: Vec<VertexId>,
        base_weights: Vec<f64>,
    ) -> Self {
        Hypergraph {
            vertex_offsets,
            vertex_incidence,
            edge_offsets,
            edge_members,
            base_weights,
        }
    }

    /// Returns `(vertex_offsets, vertex_incidence, edge_offsets, edge_members, base_weights)`.
    #[allow(clippy::type_complexity)]
    pub fn into_raw_parts(self) -> (Vec<usize>, Vec<EdgeId>, Vec<usize>, Vec<VertexId>, Vec<f64>) {
        (
            self.vertex_offsets,
            self.vertex_incidence,
            self.edge_offsets,
            self.edge_members,
            self.base_weights,
        )
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.vertex_offsets.len() - 1
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edge_offsets.len() - 1
    }

    /// Number of (vertex, edge) incidences.
    #[inline]
    pub fn num_pins(&self) -> usize {
        self.edge_members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.num_edges() == 0
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &[VertexId] {
        let e = e as usize;
        &self.edge_members[self.edge_offsets[e]..self.edge_offsets[e + 1]]
    }

    #[inline]
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        let v = v as usize;
        &self.vertex_incidence[self.vertex_offsets[v]..self.vertex_offsets[v + 1]]
    }

    #[inline]
    pub fn edge_size(&self, e: EdgeId) -> usize {
        let e = e as usize;
        self.edge_offsets[e + 1] - self.edge_offsets[e]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.vertex_offsets[v + 1] - self.vertex_offsets[v]
    }

    #[inline]
    pub fn weight(&self, e: EdgeId) -> f64 {
        self.base_weights[e as usize]
    }

    pub fn base_weights(&self) -> &[f64] {
        &self.base_weights
    }

    pub fn vertex_offsets(&self) -> &[usize] {
        &self.vertex_offsets
    }

    pub fn vertex_incidence(&self) -> &[EdgeId] {
        &self.vertex_incidence
    }

    pub fn edge_offsets(&self) -> &[usize] {
        &self.edge_offsets
    }

    pub fn edge_members(&self) -> &[VertexId] {
        &self.edge_members
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[VertexId]> + '_ {
        self.edge_offsets
            .windows(2)
            .map(move |w| &self.edge_members[w[0]..w[1]])
    }

    /// Replaces the edge weights, keeping the incidence structure.
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.num_edges() {
            return Err(Error::LengthMismatch {
                what: "weights",
                got: weights.len(),
                expected: self.num_edges(),
            });
        }
        if let Some((edge, &weight)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::BadWeight { edge, weight });
        }
        self.base_weights = weights;
        Ok(self)
    }

    pub fn stats(&self) -> HypergraphStats {
        compute_stats(self)
    }

    /// Checks every structural invariant and reports the first offending
    /// index for each violated one.
    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

/// Builds a hypergraph whose vertex count is one past the largest id used.
pub fn build_hypergraph<E: AsRef<[VertexId]>>(
    edges: &[E],
    weights: Option<&[f64]>,
    isolated: IsolatedVertices,
) -> Result<Hypergraph> {
    Hypergraph::from_edges(None, edges, weights, isolated)
}

pub fn compute_stats(h: &Hypergraph) -> HypergraphStats {
    let max_degree = h
        .vertex_offsets
        .windows(2)
        .map(|w| w[1] - w[0])
        .max()
        .unwrap_or(0);
    let rank = h
        .edge_offsets
        .windows(2)
        .map(|w| w[1] - w[0])
        .max()
        .unwrap_or(0);
    HypergraphStats {
        n: h.num_vertices(),
        m: h.num_edges(),
        kappa: h.num_pins(),
        max_degree,
        rank,
    }
}

pub(crate) fn exclusive_offsets(counts: &[usize]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(counts.len() + 1);
    let mut acc = 0;
    offsets.push(0);
    for &c in counts {
        acc += c;
        offsets.push(acc);
    }
    offsets
}

/// Counting-sort transpose of a CSR array. Each output segment is sorted
/// ascending because rows are visited in order.
pub(crate) fn invert(row_offsets: &[usize], cols: &[u32], col_offsets: &[usize]) -> Vec<u32> {
    let mut cursor = col_offsets[..col_offsets.len() - 1].to_vec();
    let mut out = vec![0u32; cols.len()];
    for (row, w) in row_offsets.windows(2).enumerate() {
        for &c in &cols[w[0]..w[1]] {
            let slot = &mut cursor[c as usize];
            out[*slot] = row as u32;
            *slot += 1;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    /// An offset array is empty, does not start at 0, or does not end at its
    /// index array's length.
    OffsetBounds {
        array: &'static str,
    },
    OffsetsDecreasing {
        array: &'static str,
        index: usize,
    },
    PinCountMismatch {
        vertex_side: usize,
        edge_side: usize,
    },
    WeightCount {
        got: usize,
        expected: usize,
    },
    VertexIdOutOfRange {
        edge: EdgeId,
        vertex: u32,
    },
    EdgeIdOutOfRange {
        vertex: VertexId,
        edge: u32,
    },
    /// The pair is listed on one side of the incidence structure only.
    Inconsistent {
        vertex: VertexId,
        edge: EdgeId,
    },
    IsolatedVertex(VertexId),
    DuplicateInEdge {
        edge: EdgeId,
        vertex: VertexId,
    },
    DuplicateInIncidence {
        vertex: VertexId,
        edge: EdgeId,
    },
    NonPositiveWeight {
        edge: EdgeId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OffsetBounds { array } => write!(f, "{array} has invalid bounds"),
            Violation::OffsetsDecreasing { array, index } => {
                write!(f, "{array} decreases at index {index}")
            }
            Violation::PinCountMismatch {
                vertex_side,
                edge_side,
            } => write!(
                f,
                "incidence has {vertex_side} pins but edge members have {edge_side}"
            ),
            Violation::WeightCount { got, expected } => {
                write!(f, "{got} weights for {expected} edges")
            }
            Violation::VertexIdOutOfRange { edge, vertex } => {
                write!(f, "edge {edge} lists out-of-range vertex {vertex}")
            }
            Violation::EdgeIdOutOfRange { vertex, edge } => {
                write!(f, "vertex {vertex} lists out-of-range edge {edge}")
            }
            Violation::Inconsistent { vertex, edge } => write!(
                f,
                "vertex {vertex} and edge {edge} are listed on only one side of the incidence"
            ),
            Violation::IsolatedVertex(v) => write!(f, "vertex {v} has degree 0"),
            Violation::DuplicateInEdge { edge, vertex } => {
                write!(f, "edge {edge} lists vertex {vertex} twice")
            }
            Violation::DuplicateInIncidence { vertex, edge } => {
                write!(f, "vertex {vertex} lists edge {edge} twice")
            }
            Violation::NonPositiveWeight { edge } => {
                write!(f, "edge {edge} has a non-positive weight")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_offsets(
    array: &'static str,
    offsets: &[usize],
    len: usize,
    out: &mut Vec<Violation>,
) -> bool {
    if offsets.first() != Some(&0) || offsets.last() != Some(&len) {
        out.push(Violation::OffsetBounds { array });
        return false;
    }
    if let Some(i) = offsets.windows(2).position(|w| w[1] < w[0]) {
        out.push(Violation::OffsetsDecreasing {
            array,
            index: i + 1,
        });
        return false;
    }
    true
}

pub fn validate(h: &Hypergraph) -> ValidationReport {
    let mut out = Vec::new();
    let v_ok = check_offsets(
        "vertex_offsets",
        &h.vertex_offsets,
        h.vertex_incidence.len(),
        &mut out,
    );
    let e_ok = check_offsets(
        "edge_offsets",
        &h.edge_offsets,
        h.edge_members.len(),
        &mut out,
    );
    if h.vertex_incidence.len() != h.edge_members.len() {
        out.push(Violation::PinCountMismatch {
            vertex_side: h.vertex_incidence.len(),
            edge_side: h.edge_members.len(),
        });
    }
    let m = h.edge_offsets.len().saturating_sub(1);
    let n = h.vertex_offsets.len().saturating_sub(1);
    if h.base_weights.len() != m {
        out.push(Violation::WeightCount {
            got: h.base_weights.len(),
            expected: m,
        });
    }
    if let Some(e) = h
        .base_weights
        .iter()
        .position(|w| !(w.is_finite() && *w > 0.0))
    {
        out.push(Violation::NonPositiveWeight { edge: e as EdgeId });
    }
    if !(v_ok && e_ok) {
        return ValidationReport { violations: out };
    }

    let mut edge_pairs = Vec::with_capacity(h.edge_members.len());
    let mut bad_vertex = None;
    let mut dup_in_edge = None;
    for (e, w) in h.edge_offsets.windows(2).enumerate() {
        let members = &h.edge_members[w[0]..w[1]];
        for (i, &v) in members.iter().enumerate() {
            if v as usize >= n {
                bad_vertex.get_or_insert((e, v));
                continue;
            }
            if members[..i].contains(&v) {
                dup_in_edge.get_or_insert((e, v));
            }
            edge_pairs.push((v, e as EdgeId));
        }
    }
    if let Some((edge, vertex)) = bad_vertex {
        out.push(Violation::VertexIdOutOfRange {
            edge: edge as EdgeId,
            vertex,
        });
    }
    if let Some((edge, vertex)) = dup_in_edge {
        out.push(Violation::DuplicateInEdge {
            edge: edge as EdgeId,
            vertex,
        });
    }

    let mut vertex_pairs = Vec::with_capacity(h.vertex_incidence.len());
    let mut bad_edge = None;
    let mut dup_in_incidence = None;
    let mut isolated = None;
    for (v, w) in h.vertex_offsets.windows(2).enumerate() {
        let incident = &h.vertex_incidence[w[0]..w[1]];
        if incident.is_empty() {
            isolated.get_or_insert(v);
        }
        for (i, &e) in incident.iter().enumerate() {
            if e as usize >= m {
                bad_edge.get_or_insert((v, e));
                continue;
            }
            if incident[..i].contains(&e) {
                dup_in_incidence.get_or_insert((v, e));
            }
            vertex_pairs.push((v as VertexId, e));
        }
    }
    if let Some((vertex, edge)) = bad_edge {
        out.push(Violation::EdgeIdOutOfRange {
            vertex: vertex as VertexId,
            edge,
        });
    }
    if let Some((vertex, edge)) = dup_in_incidence {
        out.push(Violation::DuplicateInIncidence {
            vertex: vertex as VertexId,
            edge,
        });
    }
    if let Some(v) = isolated {
        out.push(Violation::IsolatedVertex(v as VertexId));
    }

    edge_pairs.sort_unstable();
    vertex_pairs.sort_unstable();
    if let Some((vertex, edge)) = first_asymmetric(&edge_pairs, &vertex_pairs) {
        out.push(Violation::Inconsistent { vertex, edge });
    }
    ValidationReport { violations: out }
}

/// First pair (in sorted order) whose multiplicity differs between the two
/// sorted lists.
fn first_asymmetric(a: &[(u32, u32)], b: &[(u32, u32)]) -> Option<(u32, u32)> {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => return Some(a[i]),
            std::cmp::Ordering::Greater => return Some(b[j]),
        }
    }
    a.get(i).or(b.get(j)).copied()
}

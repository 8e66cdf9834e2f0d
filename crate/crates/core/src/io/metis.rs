//! METIS graph files read as 2-uniform hypergraphs.
//!
//! Header `n m [fmt [ncon]]`, then one adjacency line per vertex with 1-based
//! neighbor ids. The last digit of `fmt` enables edge weights (given after
//! each neighbor), the tens digit vertex weights (`ncon` values leading the
//! line, ignored), and the hundreds digit vertex sizes (one value leading
//! the line, ignored).

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, IsolatedVertices, VertexId};

pub fn parse_metis_graph(text: &str, isolated: IsolatedVertices) -> Result<Hypergraph> {
    // blank lines are isolated vertices, so only comments are skipped
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('%'));
    let (header_no, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| Error::parse(1, "missing header"))?;
    let fields: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(header_no, format!("bad header field '{t}'")))
        })
        .collect::<Result<_>>()?;
    if !(2..=4).contains(&fields.len()) {
        return Err(Error::parse(header_no, "header must be 'n m [fmt [ncon]]'"));
    }
    let (n, m) = (fields[0], fields[1]);
    let fmt = fields.get(2).copied().unwrap_or(0);
    if fmt > 111 || fmt % 10 > 1 || (fmt / 10) % 10 > 1 {
        return Err(Error::parse(
            header_no,
            format!("unsupported format code {fmt}"),
        ));
    }
    let edge_weights = fmt % 10 == 1;
    let ncon = if (fmt / 10) % 10 == 1 {
        fields.get(3).copied().unwrap_or(1)
    } else {
        0
    };
    let vsize = fmt / 100 == 1;
    let skip = ncon + vsize as usize;

    let mut edges: Vec<Vec<VertexId>> = Vec::with_capacity(m);
    let mut weights = Vec::new();
    // (u, v, w) with u > v, for the symmetry check
    let mut back: Vec<(usize, usize, u64)> = Vec::with_capacity(m);
    let mut forward: Vec<(usize, usize, u64)> = Vec::with_capacity(m);
    for u in 0..n {
        let (line_no, line) = lines.next().ok_or_else(|| {
            Error::parse(header_no, format!("expected {n} vertex lines, found {u}"))
        })?;
        let tokens: Vec<&str> = line.split_whitespace().skip(skip).collect();
        let stride = if edge_weights { 2 } else { 1 };
        if !tokens.len().is_multiple_of(stride) {
            return Err(Error::parse(line_no, "neighbor without weight"));
        }
        for pair in tokens.chunks(stride) {
            let v: usize = pair[0]
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad neighbor '{}'", pair[0])))?;
            if v == 0 || v > n {
                return Err(Error::parse(
                    line_no,
                    format!("neighbor {v} outside [1, {n}]"),
                ));
            }
            let v = v - 1;
            if v == u {
                return Err(Error::parse(
                    line_no,
                    format!("self-loop on vertex {}", u + 1),
                ));
            }
            let w: f64 = match pair.get(1) {
                Some(t) => t
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad edge weight '{t}'")))?,
                None => 1.0,
            };
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::parse(
                    line_no,
                    format!("edge weight {w} must be positive"),
                ));
            }
            if u < v {
                edges.push(vec![u as VertexId, v as VertexId]);
                weights.push(w);
                forward.push((u, v, w.to_bits()));
            } else {
                back.push((v, u, w.to_bits()));
            }
        }
    }
    if let Some((line_no, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(Error::parse(line_no, "unexpected trailing content"));
    }
    forward.sort_unstable();
    back.sort_unstable();
    if forward != back {
        let (u, v, _) = forward
            .iter()
            .zip(&back)
            .find(|(a, b)| a != b)
            .map(|(a, _)| *a)
            .or_else(|| forward.get(back.len()).copied())
            .or_else(|| back.get(forward.len()).copied())
            .unwrap();
        return Err(Error::parse(
            header_no,
            format!(
                "adjacency is not symmetric at edge {{{}, {}}}",
                u + 1,
                v + 1
            ),
        ));
    }
    if forward
        .windows(2)
        .any(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1)
    {
        return Err(Error::parse(header_no, "parallel edges in graph"));
    }
    if edges.len() != m {
        return Err(Error::parse(
            header_no,
            format!("header declares {m} edges, body has {}", edges.len()),
        ));
    }
    Hypergraph::from_edges(
        Some(n),
        &edges,
        edge_weights.then_some(weights.as_slice()),
        isolated,
    )
}

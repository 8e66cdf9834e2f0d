//! hMetis `.hgr` hypergraph files.
//!
//! Header `m n [fmt]`, then one line per hyperedge with 1-based vertex ids.
//! `fmt` 1 or 11 prefixes every edge line with its weight; 10 or 11 appends
//! `n` vertex-weight lines, which are read and ignored. Lines starting with
//! `%` are comments.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, IsolatedVertices, VertexId};

use super::content_lines;

pub fn parse_hgr(text: &str, isolated: IsolatedVertices) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if !(2..=3).contains(&fields.len()) {
        return Err(Error::parse(header_no, "header must be 'm n [fmt]'"));
    }
    let num = |s: &str, what: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(header_no, format!("bad {what} '{s}'")))
    };
    let m = num(fields[0], "edge count")?;
    let n = num(fields[1], "vertex count")?;
    let fmt = match fields.get(2) {
        Some(f) => num(f, "format code")?,
        None => 0,
    };
    let (edge_weights, vertex_weights) = match fmt {
        0 => (false, false),
        1 => (true, false),
        10 => (false, true),
        11 => (true, true),
        other => {
            return Err(Error::parse(
                header_no,
                format!("unsupported format code {other}"),
            ))
        }
    };

    let mut edges: Vec<Vec<VertexId>> = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(if edge_weights { m } else { 0 });
    for i in 0..m {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(header_no, format!("expected {m} edges, found {i}")))?;
        let mut tokens = line.split_whitespace();
        if edge_weights {
            let tok = tokens
                .next()
                .ok_or_else(|| Error::parse(line_no, "missing edge weight"))?;
            let w: f64 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad edge weight '{tok}'")))?;
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::parse(
                    line_no,
                    format!("edge weight {w} must be positive"),
                ));
            }
            weights.push(w);
        }
        let mut edge = Vec::new();
        for tok in tokens {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad vertex id '{tok}'")))?;
            if v == 0 || v > n {
                return Err(Error::parse(
                    line_no,
                    format!("vertex id {v} outside [1, {n}]"),
                ));
            }
            edge.push((v - 1) as VertexId);
        }
        if edge.is_empty() {
            return Err(Error::parse(line_no, "empty edge"));
        }
        edges.push(edge);
    }
    if vertex_weights {
        log::warn!("hgr vertex weights are ignored");
        for i in 0..n {
            let (line_no, line) = lines.next().ok_or_else(|| {
                Error::parse(header_no, format!("expected {n} vertex weights, found {i}"))
            })?;
            if line.split_whitespace().count() != 1 {
                return Err(Error::parse(line_no, "expected one vertex weight"));
            }
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(line_no, "unexpected trailing content"));
    }
    Hypergraph::from_edges(
        Some(n),
        &edges,
        edge_weights.then_some(weights.as_slice()),
        isolated,
    )
    .map_err(|e| match e {
        Error::DuplicateVertex { edge, vertex } => Error::parse(
            header_no + 1 + edge,
            format!("vertex {} repeated in edge", vertex + 1),
        ),
        other => other,
    })
}

/// Serializes in hgr format. Weights are written (fmt 1) unless all are 1;
/// each weight uses the shortest representation that parses back exactly.
pub fn write_hgr(h: &Hypergraph) -> String {
    let weighted = h.base_weights().iter().any(|&w| w != 1.0);
    let mut out = String::new();
    if weighted {
        writeln!(out, "{} {} 1", h.num_edges(), h.num_vertices()).unwrap();
    } else {
        writeln!(out, "{} {}", h.num_edges(), h.num_vertices()).unwrap();
    }
    for (e, members) in h.edges().enumerate() {
        if weighted {
            write!(out, "{} ", h.base_weights()[e]).unwrap();
        }
        let mut first = true;
        for &v in members {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{}", v + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

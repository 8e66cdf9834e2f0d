//! Matching output: `#` header lines with summary values, then one matched
//! edge id per line in ascending order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::EdgeId;
use crate::matching::Matching;

pub fn format_matching(m: &Matching) -> String {
    let mut ids = m.matched_edges.clone();
    ids.sort_unstable();
    let mut out = String::new();
    writeln!(
        out,
        "# weight={:.6} size={} rounds={}",
        m.total_weight,
        ids.len(),
        m.rounds_used
    )
    .unwrap();
    for e in ids {
        writeln!(out, "{e}").unwrap();
    }
    out
}

pub fn write_matching<W: std::io::Write>(m: &Matching, mut dest: W) -> Result<()> {
    dest.write_all(format_matching(m).as_bytes())?;
    dest.flush()?;
    Ok(())
}

/// Edge ids listed in a matching file, in file order.
pub fn parse_matching(text: &str) -> Result<Vec<EdgeId>> {
    super::content_lines(text)
        .filter(|(_, l)| !l.starts_with('#'))
        .map(|(no, l)| {
            l.parse::<EdgeId>()
                .map_err(|_| Error::parse(no, format!("bad edge id '{l}'")))
        })
        .collect()
}

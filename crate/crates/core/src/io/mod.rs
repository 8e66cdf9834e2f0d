//! Instance and result formats.

mod generate;
mod hgr;
mod matching_file;
mod metis;

pub use generate::{
    apply_weight_policy, generate_random, generate_tight_family, random_weights_1_100, SizeDist,
    WeightPolicy,
};
pub use hgr::{parse_hgr, write_hgr};
pub use matching_file::{format_matching, parse_matching, write_matching};
pub use metis::parse_metis_graph;

/// Trimmed non-empty, non-comment lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'))
}

//! Instances shared by the benchmarks.

use hypermatch::io::{apply_weight_policy, generate_random, SizeDist, WeightPolicy};
use hypermatch::Hypergraph;

/// `m` edges of size 2 to 5 over `m` candidate vertices, integer weights in
/// [1, 100].
pub fn random_weighted(m: usize, seed: u64) -> Hypergraph {
    let h = generate_random(m, m, SizeDist::uniform(2, 5), seed).expect("feasible sizes");
    apply_weight_policy(h, WeightPolicy::Random1To100(seed))
}

pub fn worker_counts() -> Vec<usize> {
    let max = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut w = vec![1];
    while w.last().unwrap() * 2 <= max.max(2) {
        w.push(w.last().unwrap() * 2);
    }
    w
}

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, IsolatedVertices, VertexId};

/// The family on which local max is off by a factor of `d`.
///
/// Vertices `x_i = i` and `y_i = d + i`; edges `0..d` are the pairs
/// `{x_i, y_i}` with weight 1, edge `d` is `{x_0, .., x_{d-1}}` with weight
/// `1 + epsilon`.
pub fn generate_tight_family(d: usize, epsilon: f64) -> Result<Hypergraph> {
    if d < 2 {
        return Err(Error::Infeasible(format!(
            "tight family needs d >= 2, got {d}"
        )));
    }
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::Infeasible(format!(
            "tight family needs epsilon > 0, got {epsilon}"
        )));
    }
    let mut edges: Vec<Vec<VertexId>> = (0..d)
        .map(|i| vec![i as VertexId, (d + i) as VertexId])
        .collect();
    edges.push((0..d as VertexId).collect());
    let mut weights = vec![1.0; d];
    weights.push(1.0 + epsilon);
    Hypergraph::from_edges(
        Some(2 * d),
        &edges,
        Some(&weights),
        IsolatedVertices::Reject,
    )
}

/// Inclusive range of edge sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeDist {
    pub min: usize,
    pub max: usize,
}

impl SizeDist {
    pub fn fixed(k: usize) -> Self {
        SizeDist { min: k, max: k }
    }

    pub fn uniform(min: usize, max: usize) -> Self {
        SizeDist { min, max }
    }
}

/// `m` edges with sizes uniform in `sizes` over `n` candidate vertices.
/// Unreferenced vertices are dropped, so the result may have fewer than `n`
/// vertices. Unit weights.
pub fn generate_random(n: usize, m: usize, sizes: SizeDist, seed: u64) -> Result<Hypergraph> {
    if sizes.min == 0 || sizes.min > sizes.max {
        return Err(Error::Infeasible(format!(
            "edge sizes [{}, {}] are not a valid range",
            sizes.min, sizes.max
        )));
    }
    if m > 0 && sizes.max > n {
        return Err(Error::Infeasible(format!(
            "edges of size {} need at least that many vertices, got {n}",
            sizes.max
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Vec<VertexId>> = (0..m)
        .map(|_| {
            let k = rng.random_range(sizes.min..=sizes.max);
            sample(&mut rng, n, k)
                .into_iter()
                .map(|v| v as VertexId)
                .collect()
        })
        .collect();
    Hypergraph::from_edges(Some(n), &edges, None, IsolatedVertices::Drop)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightPolicy {
    #[default]
    FromFile,
    Unit,
    /// Integer weights uniform in [1, 100], determined by the seed.
    Random1To100(u64),
}

pub fn random_weights_1_100(m: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7765_6967_6874_7321);
    (0..m)
        .map(|_| rng.random_range(1u32..=100) as f64)
        .collect()
}

pub fn apply_weight_policy(h: Hypergraph, policy: WeightPolicy) -> Hypergraph {
    let m = h.num_edges();
    let weights = match policy {
        WeightPolicy::FromFile => return h,
        WeightPolicy::Unit => vec![1.0; m],
        WeightPolicy::Random1To100(seed) => random_weights_1_100(m, seed),
    };
    h.with_weights(weights)
        .expect("generated weights are positive")
}

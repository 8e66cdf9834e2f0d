//! Exact maximum-weight matching for small instances and matching
//! verification.

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph};
use crate::matching::Matching;

/// Default limit on the edge count accepted by [`exact_matching`].
pub const EXACT_EDGE_LIMIT: usize = 22;

#[derive(Clone, Debug, PartialEq)]
pub struct ExactResult {
    /// Lexicographically smallest optimal edge set, ascending.
    pub optimal_edges: Vec<EdgeId>,
    pub optimal_weight: f64,
    /// Search nodes visited.
    pub explored: usize,
}

pub fn exact_matching(h: &Hypergraph, weights: &[f64]) -> Result<ExactResult> {
    exact_matching_capped(h, weights, EXACT_EDGE_LIMIT)
}

fn tolerance(w: f64) -> f64 {
    1e-9 * w.abs().max(1.0)
}

struct Search<'a> {
    h: &'a Hypergraph,
    weights: &'a [f64],
    order: Vec<EdgeId>,
    /// suffix[i] = sum of weights of order[i..]
    suffix: Vec<f64>,
    used: Vec<bool>,
    explored: usize,
}

impl<'a> Search<'a> {
    fn new(h: &'a Hypergraph, weights: &'a [f64], order: Vec<EdgeId>) -> Self {
        let mut suffix = vec![0.0; order.len() + 1];
        for i in (0..order.len()).rev() {
            suffix[i] = suffix[i + 1] + weights[order[i] as usize];
        }
        Search {
            h,
            weights,
            order,
            suffix,
            used: vec![false; h.num_vertices()],
            explored: 0,
        }
    }

    fn fits(&self, e: EdgeId) -> bool {
        self.h.edge(e).iter().all(|&v| !self.used[v as usize])
    }

    fn set(&mut self, e: EdgeId, on: bool) {
        for &v in self.h.edge(e) {
            self.used[v as usize] = on;
        }
    }

    /// Best achievable weight from position `i` with `current` collected.
    fn best_weight(&mut self, i: usize, current: f64, best: &mut f64) {
        self.explored += 1;
        if current > *best {
            *best = current;
        }
        if i == self.order.len() || current + self.suffix[i] <= *best {
            return;
        }
        let e = self.order[i];
        if self.fits(e) {
            self.set(e, true);
            self.best_weight(i + 1, current + self.weights[e as usize], best);
            self.set(e, false);
        }
        self.best_weight(i + 1, current, best);
    }

    /// First set in include-first order reaching `target`; with `order`
    /// ascending by id that is the lexicographically smallest one.
    fn first_reaching(
        &mut self,
        i: usize,
        current: f64,
        target: f64,
        chosen: &mut Vec<EdgeId>,
    ) -> bool {
        self.explored += 1;
        if current >= target {
            return true;
        }
        if i == self.order.len() || current + self.suffix[i] < target {
            return false;
        }
        let e = self.order[i];
        if self.fits(e) {
            self.set(e, true);
            chosen.push(e);
            if self.first_reaching(i + 1, current + self.weights[e as usize], target, chosen) {
                return true;
            }
            chosen.pop();
            self.set(e, false);
        }
        self.first_reaching(i + 1, current, target, chosen)
    }
}

/// Maximum-weight matching by branch and bound. The optimum is found with
/// edges ordered by decreasing weight, then the lexicographically smallest
/// set attaining it is recovered by a second bounded search in id order.
pub fn exact_matching_capped(h: &Hypergraph, weights: &[f64], limit: usize) -> Result<ExactResult> {
    let m = h.num_edges();
    if m > limit {
        return Err(Error::TooLarge {
            what: "edges for the exact oracle",
            got: m,
            limit,
        });
    }
    if weights.len() != m {
        return Err(Error::LengthMismatch {
            what: "weights",
            got: weights.len(),
            expected: m,
        });
    }
    let mut by_weight: Vec<EdgeId> = (0..m as EdgeId).collect();
    by_weight.sort_by(|&a, &b| {
        weights[b as usize]
            .total_cmp(&weights[a as usize])
            .then(a.cmp(&b))
    });
    let mut search = Search::new(h, weights, by_weight);
    let mut best = 0.0;
    search.best_weight(0, 0.0, &mut best);
    let explored = search.explored;

    let mut search = Search::new(h, weights, (0..m as EdgeId).collect());
    let mut chosen = Vec::new();
    let found = search.first_reaching(0, 0.0, best - tolerance(best), &mut chosen);
    debug_assert!(found || m == 0);
    let optimal_weight = chosen.iter().map(|&e| weights[e as usize]).sum();
    Ok(ExactResult {
        optimal_edges: chosen,
        optimal_weight,
        explored: explored + search.explored,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyReport {
    pub disjoint: bool,
    pub maximal: bool,
    /// Sum of base weights, recomputed.
    pub weight: f64,
}

impl VerifyReport {
    pub fn is_valid(&self) -> bool {
        self.disjoint && self.maximal
    }
}

/// Checks disjointness and maximality of an edge set against `h`.
pub fn verify_matching(h: &Hypergraph, edges: &[EdgeId]) -> Result<VerifyReport> {
    let m = h.num_edges();
    let mut covered = vec![false; h.num_vertices()];
    let mut in_set = vec![false; m];
    let mut disjoint = true;
    let mut weight = 0.0;
    for &e in edges {
        if e as usize >= m {
            return Err(Error::InvalidEdgeId {
                edge: e as usize,
                num_edges: m,
            });
        }
        if std::mem::replace(&mut in_set[e as usize], true) {
            disjoint = false;
            continue;
        }
        weight += h.weight(e);
        for &v in h.edge(e) {
            if std::mem::replace(&mut covered[v as usize], true) {
                disjoint = false;
            }
        }
    }
    let maximal = (0..m as EdgeId)
        .filter(|&e| !in_set[e as usize])
        .all(|e| h.edge(e).iter().any(|&v| covered[v as usize]));
    Ok(VerifyReport {
        disjoint,
        maximal,
        weight,
    })
}

/// `w(M) / w(opt)` with `w(M)` recomputed from base weights; `exact` must
/// have been computed on the base weights too.
pub fn approximation_ratio(
    h: &Hypergraph,
    matching: &Matching,
    exact: &ExactResult,
) -> Result<f64> {
    if exact.optimal_weight <= 0.0 {
        return Err(Error::ZeroOptimum);
    }
    let w: f64 = matching.matched_edges.iter().map(|&e| h.weight(e)).sum();
    Ok(w / exact.optimal_weight)
}

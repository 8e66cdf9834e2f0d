//! Sequential round-based local-max matching and the sorted greedy baseline.
//!
//! Each round every active vertex picks its heaviest active incident edge;
//! an edge picked by all of its vertices is matched, and every edge touching
//! a matched edge is soft-deleted. Weights are redrawn every round from the
//! [`WeightStream`].

use std::time::Instant;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::matching::{Matching, RoundStats, RunReport, Variant, WorkCounters};
use crate::rng::WeightStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeStatus {
    Active,
    Matched,
    Inactive,
}

/// Mutable per-round arrays. `Matched` and `Inactive` are absorbing.
#[derive(Clone, Debug)]
pub struct RoundState {
    pub top_edge: Vec<Option<EdgeId>>,
    pub agree_count: Vec<u32>,
    pub edge_status: Vec<EdgeStatus>,
    pub vertex_active: Vec<bool>,
    pub newly_completed: Vec<bool>,
}

impl RoundState {
    pub fn new(h: &Hypergraph) -> Self {
        RoundState {
            top_edge: vec![None; h.num_vertices()],
            agree_count: vec![0; h.num_edges()],
            edge_status: vec![EdgeStatus::Active; h.num_edges()],
            vertex_active: vec![true; h.num_vertices()],
            newly_completed: vec![false; h.num_vertices()],
        }
    }

    pub fn active_edges(&self) -> usize {
        self.edge_status
            .iter()
            .filter(|&&s| s == EdgeStatus::Active)
            .count()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundDelta {
    pub matched: Vec<EdgeId>,
    pub deactivated: Vec<EdgeId>,
    pub pin_visits: usize,
    pub edge_visits: usize,
}

/// Safety cap on rounds: `64 + 4 * ceil(log2(m + 2))`.
pub fn default_max_rounds(num_edges: usize) -> usize {
    let x = num_edges + 2;
    let ceil_log2 = (usize::BITS - (x - 1).leading_zeros()) as usize;
    64 + 4 * ceil_log2
}

/// Runs one round on `state` with the given per-edge weights; `stream` and
/// `round` define the tie-break order.
pub fn run_round(
    h: &Hypergraph,
    state: &mut RoundState,
    weights: &[f64],
    stream: &WeightStream,
    round: usize,
) -> RoundDelta {
    let mut delta = RoundDelta::default();

    // A: each active vertex picks its heaviest active edge.
    for v in 0..h.num_vertices() {
        if !state.vertex_active[v] {
            continue;
        }
        let incident = h.incident(v as VertexId);
        delta.pin_visits += incident.len();
        let mut best: Option<EdgeId> = None;
        for &e in incident {
            if state.edge_status[e as usize] != EdgeStatus::Active {
                continue;
            }
            best = match best {
                Some(b)
                    if stream
                        .compare(round, weights[e as usize], e, weights[b as usize], b)
                        .is_le() =>
                {
                    Some(b)
                }
                _ => Some(e),
            };
        }
        state.top_edge[v] = best;
    }

    // B: fresh agreement counts.
    state.agree_count.iter_mut().for_each(|c| *c = 0);
    for v in 0..h.num_vertices() {
        if state.vertex_active[v] {
            if let Some(e) = state.top_edge[v] {
                state.agree_count[e as usize] += 1;
            }
        }
    }

    // C: edges chosen by all their vertices join the matching.
    for e in 0..h.num_edges() {
        if state.edge_status[e] != EdgeStatus::Active {
            continue;
        }
        delta.edge_visits += 1;
        if state.agree_count[e] as usize == h.edge_size(e as EdgeId) {
            state.edge_status[e] = EdgeStatus::Matched;
            delta.matched.push(e as EdgeId);
            let members = h.edge(e as EdgeId);
            delta.pin_visits += members.len();
            for &v in members {
                state.newly_completed[v as usize] = true;
            }
        }
    }

    // D: retire completed vertices and every active edge touching them.
    for v in 0..h.num_vertices() {
        if !state.newly_completed[v] {
            continue;
        }
        let incident = h.incident(v as VertexId);
        delta.pin_visits += incident.len();
        for &e in incident {
            if state.edge_status[e as usize] == EdgeStatus::Active {
                state.edge_status[e as usize] = EdgeStatus::Inactive;
                delta.deactivated.push(e);
            }
        }
        state.newly_completed[v] = false;
        state.vertex_active[v] = false;
    }
    delta
}

/// Sequential local-max matching. Errors with the partial matching when
/// `max_rounds` pass with edges still active.
pub fn local_max_sequential(
    h: &Hypergraph,
    stream: &WeightStream,
    max_rounds: usize,
) -> Result<(Matching, RunReport)> {
    let start = Instant::now();
    let mut state = RoundState::new(h);
    let mut weights = vec![0.0; h.num_edges()];
    let mut active_edges = h.num_edges();
    let mut counters = WorkCounters::default();
    let mut per_round = Vec::new();
    let mut matched_by_round = Vec::new();

    let mut round = 0;
    while active_edges > 0 {
        if round == max_rounds {
            let partial = Matching::from_rounds(h, &matched_by_round);
            return Err(Error::RoundCapExceeded {
                max_rounds,
                active_edges,
                partial: Box::new(partial),
            });
        }
        for (e, w) in weights.iter_mut().enumerate() {
            if state.edge_status[e] == EdgeStatus::Active {
                *w = stream.value(e as EdgeId, h.weight(e as EdgeId), round);
                counters.total_edge_visits += 1;
            }
        }
        let delta = run_round(h, &mut state, &weights, stream, round);
        active_edges -= delta.matched.len() + delta.deactivated.len();
        counters.total_pin_visits += delta.pin_visits;
        counters.total_edge_visits += delta.edge_visits;
        per_round.push(RoundStats {
            matched: delta.matched.len(),
            deactivated: delta.deactivated.len(),
        });
        matched_by_round.push(delta.matched);
        round += 1;
    }
    counters.rounds = round;

    let matching = Matching::from_rounds(h, &matched_by_round);
    let report = RunReport {
        variant: Variant::Sequential,
        workers: 1,
        rounds: round,
        per_round,
        matched_by_round,
        counters,
        wall_time: start.elapsed(),
    };
    Ok((matching, report))
}

/// Scans edges by decreasing base weight (ties by ascending id) and keeps
/// each one that is disjoint from everything kept so far.
pub fn greedy_sorted(h: &Hypergraph) -> Matching {
    let mut order: Vec<EdgeId> = (0..h.num_edges() as EdgeId).collect();
    order.sort_by(|&a, &b| h.weight(b).total_cmp(&h.weight(a)).then(a.cmp(&b)));
    let mut covered = vec![false; h.num_vertices()];
    let mut matched = Vec::new();
    for e in order {
        let members = h.edge(e);
        if members.iter().all(|&v| !covered[v as usize]) {
            members.iter().for_each(|&v| covered[v as usize] = true);
            matched.push(e);
        }
    }
    let rounds = if matched.is_empty() {
        vec![]
    } else {
        vec![matched]
    };
    Matching::from_rounds(h, &rounds)
}

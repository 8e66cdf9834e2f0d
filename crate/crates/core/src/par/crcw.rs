//! Concurrent-write variant: four phases per round.
//!
//! Agreement counts are accumulated with atomic increments (order does not
//! matter, only the total is compared against the edge size) and edge
//! deactivation tolerates several vertices storing the same status value.

use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU8, Ordering::Relaxed};

use rayon::prelude::*;

use super::{with_pool, Ledger, ParallelConfig, NO_EDGE};
use crate::error::Result;
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::matching::{Matching, RunReport, Variant};
use crate::rng::WeightStream;

const ACTIVE: u8 = 0;
const MATCHED: u8 = 1;
const INACTIVE: u8 = 2;

pub fn local_max_crcw(
    h: &Hypergraph,
    stream: &WeightStream,
    config: &ParallelConfig,
) -> Result<(Matching, RunReport)> {
    let (n, m) = (h.num_vertices(), h.num_edges());
    let max_rounds = config.max_rounds_for(m);
    let grain = config.grain;
    let base = h.base_weights();

    let mut weights = vec![0.0f64; m];
    let mut top = vec![NO_EDGE; n];
    let agree: Vec<AtomicU32> = (0..m).map(|_| AtomicU32::new(0)).collect();
    let status: Vec<AtomicU8> = (0..m).map(|_| AtomicU8::new(ACTIVE)).collect();
    let mut vertex_active = vec![true; n];
    let newly: Vec<AtomicBool> = (0..n).map(|_| AtomicBool::new(false)).collect();

    with_pool(config.workers, move || {
        let mut ledger = Ledger::start();
        let mut active_edges = m;
        let mut round = 0;
        while active_edges > 0 {
            if round == max_rounds {
                return Err(ledger.cap_error(h, max_rounds, active_edges));
            }

            // 1: refresh weights of active edges
            weights
                .par_iter_mut()
                .with_min_len(grain)
                .enumerate()
                .for_each(|(e, w)| {
                    if status[e].load(Relaxed) == ACTIVE {
                        *w = stream.value(e as EdgeId, base[e], round);
                    }
                });
            ledger.counters.total_edge_visits += active_edges;

            // 2: heaviest active edge per active vertex
            let weights = &weights;
            let pins: usize = top
                .par_iter_mut()
                .with_min_len(grain)
                .zip(vertex_active.par_iter())
                .enumerate()
                .map(|(v, (t, &on))| {
                    if !on {
                        return 0;
                    }
                    let incident = h.incident(v as VertexId);
                    let mut best = NO_EDGE;
                    for &e in incident {
                        if status[e as usize].load(Relaxed) != ACTIVE {
                            continue;
                        }
                        if best == NO_EDGE
                            || stream
                                .compare(
                                    round,
                                    weights[e as usize],
                                    e,
                                    weights[best as usize],
                                    best,
                                )
                                .is_gt()
                        {
                            best = e;
                        }
                    }
                    *t = best;
                    incident.len()
                })
                .sum();
            ledger.counters.total_pin_visits += pins;

            // 3: count agreeing vertices, match edges chosen by all of them
            agree
                .par_iter()
                .with_min_len(grain)
                .for_each(|p| p.store(0, Relaxed));
            top.par_iter()
                .with_min_len(grain)
                .zip(vertex_active.par_iter())
                .for_each(|(&t, &on)| {
                    if on && t != NO_EDGE {
                        agree[t as usize].fetch_add(1, Relaxed);
                    }
                });
            let matched: Vec<EdgeId> = (0..m)
                .into_par_iter()
                .with_min_len(grain)
                .filter(|&e| {
                    status[e].load(Relaxed) == ACTIVE
                        && agree[e].load(Relaxed) as usize == h.edge_size(e as EdgeId)
                })
                .map(|e| e as EdgeId)
                .collect();
            let pins: usize = matched
                .par_iter()
                .map(|&e| {
                    status[e as usize].store(MATCHED, Relaxed);
                    let members = h.edge(e);
                    for &v in members {
                        newly[v as usize].store(true, Relaxed);
                    }
                    members.len()
                })
                .sum();
            ledger.counters.total_pin_visits += pins;
            ledger.counters.total_edge_visits += active_edges;

            // 4: retire completed vertices and their remaining edges
            let pins: usize = vertex_active
                .par_iter_mut()
                .with_min_len(grain)
                .enumerate()
                .map(|(v, on)| {
                    if !*on || !newly[v].load(Relaxed) {
                        return 0;
                    }
                    let incident = h.incident(v as VertexId);
                    for &e in incident {
                        let s = &status[e as usize];
                        if s.load(Relaxed) == ACTIVE {
                            s.store(INACTIVE, Relaxed);
                        }
                    }
                    newly[v].store(false, Relaxed);
                    *on = false;
                    incident.len()
                })
                .sum();
            ledger.counters.total_pin_visits += pins;

            let still_active = status
                .par_iter()
                .with_min_len(grain)
                .filter(|s| s.load(Relaxed) == ACTIVE)
                .count();
            let deactivated = active_edges - matched.len() - still_active;
            active_edges = still_active;
            ledger.push_round(matched, deactivated);
            round += 1;
        }
        Ok(ledger.finish(h, Variant::Crcw, config.workers))
    })
}

//! Exclusive-write variants: six phases per round, every phase writes only
//! to cells indexed by its own loop variable. The work-optimal driver runs
//! the same round on a hypergraph that is compacted after every round.

use std::borrow::Cow;

use rayon::prelude::*;

use super::{with_pool, Ledger, ParallelConfig, WriteAudit, NO_EDGE};
use crate::compact::compact;
use crate::error::Result;
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::matching::{Matching, RunReport, Variant};
use crate::rng::WeightStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Active,
    Matched,
    Inactive,
}

struct CrewState {
    weights: Vec<f64>,
    top: Vec<EdgeId>,
    status: Vec<Status>,
    edge_newly: Vec<bool>,
    vertex_active: Vec<bool>,
    vertex_newly: Vec<bool>,
}

impl CrewState {
    fn new(n: usize, m: usize) -> Self {
        CrewState {
            weights: vec![0.0; m],
            top: vec![NO_EDGE; n],
            status: vec![Status::Active; m],
            edge_newly: vec![false; m],
            vertex_active: vec![true; n],
            vertex_newly: vec![false; n],
        }
    }
}

struct RoundOutcome {
    /// Local edge ids, ascending.
    matched: Vec<EdgeId>,
    deactivated: usize,
    pin_visits: usize,
    edge_visits: usize,
}

struct RoundCtx<'a> {
    h: &'a Hypergraph,
    /// Global id of each local edge; weights and tie-breaks use global ids.
    global: &'a [EdgeId],
    stream: &'a WeightStream,
    round: usize,
    grain: usize,
}

fn check(audit: &mut Option<WriteAudit>, phase: &'static str) -> Result<()> {
    match audit {
        Some(a) => a.check(phase),
        None => Ok(()),
    }
}

fn crew_round(
    ctx: &RoundCtx<'_>,
    st: &mut CrewState,
    audit: &mut Option<WriteAudit>,
) -> Result<RoundOutcome> {
    let RoundCtx {
        h,
        global,
        stream,
        round,
        grain,
    } = *ctx;
    let base = h.base_weights();
    let mut pin_visits = 0;

    // 1: weights
    let status = &st.status;
    let written = st
        .weights
        .par_iter_mut()
        .with_min_len(grain)
        .enumerate()
        .filter(|(e, _)| status[*e] == Status::Active)
        .map(|(e, w)| {
            *w = stream.value(global[e], base[e], round);
            if let Some(a) = audit.as_ref() {
                a.record(e);
            }
            1usize
        })
        .sum::<usize>();
    let mut edge_visits = written;
    check(audit, "weights")?;

    // 2: segmented max over each active vertex's incidence
    let weights = &st.weights;
    let vertex_active = &st.vertex_active;
    pin_visits += st
        .top
        .par_iter_mut()
        .with_min_len(grain)
        .enumerate()
        .filter(|(v, _)| vertex_active[*v])
        .map(|(v, t)| {
            let incident = h.incident(v as VertexId);
            *t = incident
                .iter()
                .copied()
                .filter(|&e| status[e as usize] == Status::Active)
                .reduce(|a, b| {
                    let (ga, gb) = (global[a as usize], global[b as usize]);
                    if stream
                        .compare(round, weights[b as usize], gb, weights[a as usize], ga)
                        .is_gt()
                    {
                        b
                    } else {
                        a
                    }
                })
                .unwrap_or(NO_EDGE);
            if let Some(a) = audit.as_ref() {
                a.record(v);
            }
            incident.len()
        })
        .sum::<usize>();
    check(audit, "argmax")?;

    // 3: segmented sum of agreeing members; match unanimous edges
    let top = &st.top;
    pin_visits += st
        .status
        .par_iter_mut()
        .with_min_len(grain)
        .zip(st.edge_newly.par_iter_mut())
        .enumerate()
        .filter(|(_, (s, _))| **s == Status::Active)
        .map(|(e, (s, newly))| {
            let members = h.edge(e as EdgeId);
            let agree = members
                .iter()
                .filter(|&&v| top[v as usize] == e as EdgeId)
                .count();
            if agree == members.len() {
                *s = Status::Matched;
                *newly = true;
                if let Some(a) = audit.as_ref() {
                    a.record(e);
                }
            }
            members.len()
        })
        .sum::<usize>();
    edge_visits += written;
    check(audit, "agree")?;

    let edge_newly = &st.edge_newly;
    let matched: Vec<EdgeId> = (0..edge_newly.len())
        .into_par_iter()
        .with_min_len(grain)
        .filter(|&e| edge_newly[e])
        .map(|e| e as EdgeId)
        .collect();

    // 4: a vertex is completed iff its top edge was just matched; every
    // vertex of a matched edge chose that edge, so no incidence scan is needed
    st.vertex_newly
        .par_iter_mut()
        .with_min_len(grain)
        .enumerate()
        .for_each(|(v, newly)| {
            let t = top[v];
            if vertex_active[v] && t != NO_EDGE && edge_newly[t as usize] {
                *newly = true;
                if let Some(a) = audit.as_ref() {
                    a.record(v);
                }
            }
        });
    check(audit, "complete vertices")?;

    // 5: OR-reduction over members deactivates touched edges
    let vertex_newly = &st.vertex_newly;
    let (deactivated, pins) = st
        .status
        .par_iter_mut()
        .with_min_len(grain)
        .enumerate()
        .filter(|(_, s)| **s == Status::Active)
        .map(|(e, s)| {
            let members = h.edge(e as EdgeId);
            match members.iter().position(|&v| vertex_newly[v as usize]) {
                Some(i) => {
                    *s = Status::Inactive;
                    if let Some(a) = audit.as_ref() {
                        a.record(e);
                    }
                    (1usize, i + 1)
                }
                None => (0, members.len()),
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    pin_visits += pins;
    edge_visits += written - matched.len();
    check(audit, "deactivate edges")?;

    // 6: retire completed vertices
    st.vertex_active
        .par_iter_mut()
        .with_min_len(grain)
        .zip(st.vertex_newly.par_iter_mut())
        .enumerate()
        .for_each(|(v, (on, newly))| {
            if *newly {
                *on = false;
                *newly = false;
                if let Some(a) = audit.as_ref() {
                    a.record(v);
                }
            }
        });
    check(audit, "deactivate vertices")?;
    for &e in &matched {
        st.edge_newly[e as usize] = false;
    }

    Ok(RoundOutcome {
        matched,
        deactivated,
        pin_visits,
        edge_visits,
    })
}

fn new_audit(config: &ParallelConfig, h: &Hypergraph) -> Option<WriteAudit> {
    config
        .assert_exclusive
        .then(|| WriteAudit::new(h.num_vertices().max(h.num_edges())))
}

/// Exclusive-write local max with soft deletion.
pub fn local_max_crew(
    h: &Hypergraph,
    stream: &WeightStream,
    config: &ParallelConfig,
) -> Result<(Matching, RunReport)> {
    let (n, m) = (h.num_vertices(), h.num_edges());
    let max_rounds = config.max_rounds_for(m);
    let identity: Vec<EdgeId> = (0..m as EdgeId).collect();
    let mut audit = new_audit(config, h);
    with_pool(config.workers, move || {
        let mut st = CrewState::new(n, m);
        let mut ledger = Ledger::start();
        let mut active_edges = m;
        let mut round = 0;
        while active_edges > 0 {
            if round == max_rounds {
                return Err(ledger.cap_error(h, max_rounds, active_edges));
            }
            let ctx = RoundCtx {
                h,
                global: &identity,
                stream,
                round,
                grain: config.grain,
            };
            let out = crew_round(&ctx, &mut st, &mut audit)?;
            active_edges -= out.matched.len() + out.deactivated;
            ledger.counters.total_pin_visits += out.pin_visits;
            ledger.counters.total_edge_visits += out.edge_visits;
            ledger.push_round(out.matched, out.deactivated);
            round += 1;
        }
        Ok(ledger.finish(h, Variant::Crew, config.workers))
    })
}

/// Exclusive-write local max that physically removes matched and
/// deactivated edges after every round.
pub fn local_max_work_optimal(
    h: &Hypergraph,
    stream: &WeightStream,
    config: &ParallelConfig,
) -> Result<(Matching, RunReport)> {
    let max_rounds = config.max_rounds_for(h.num_edges());
    let mut audit = new_audit(config, h);
    with_pool(config.workers, move || {
        let mut ledger = Ledger::start();
        let mut current: Cow<'_, Hypergraph> = Cow::Borrowed(h);
        let mut global: Vec<EdgeId> = (0..h.num_edges() as EdgeId).collect();
        let mut round = 0;
        while !current.is_empty() {
            if round == max_rounds {
                return Err(ledger.cap_error(h, max_rounds, current.num_edges()));
            }
            let g = current.as_ref();
            let mut st = CrewState::new(g.num_vertices(), g.num_edges());
            let ctx = RoundCtx {
                h: g,
                global: &global,
                stream,
                round,
                grain: config.grain,
            };
            let out = crew_round(&ctx, &mut st, &mut audit)?;

            // matched ids are recorded before the edges leave the structure
            let matched: Vec<EdgeId> = out.matched.iter().map(|&e| global[e as usize]).collect();
            let edge_active: Vec<bool> =
                st.status.par_iter().map(|&s| s == Status::Active).collect();
            let c = compact(g, &edge_active, &st.vertex_active)?;
            global = c
                .kept_edges
                .par_iter()
                .map(|&e| global[e as usize])
                .collect();

            let counters = &mut ledger.counters;
            counters.total_pin_visits += out.pin_visits + c.pin_visits;
            counters.total_edge_visits += out.edge_visits + c.edge_visits;
            counters.prefix_sum_invocations += c.prefix_sums;
            counters.compactions += 1;
            ledger.push_round(matched, out.deactivated);
            current = Cow::Owned(c.hypergraph);
            round += 1;
        }
        Ok(ledger.finish(h, Variant::WorkOptimal, config.workers))
    })
}

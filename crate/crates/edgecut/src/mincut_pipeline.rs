//! End-to-end global minimum cut: direct Stoer–Wagner, or sparsify first
//! and reconcile with the trivial degree cut.

use crate::kt_framework::{kt_sparsify, EventLog, ExitReason, InnerTally, KtError, KtParams, Profile};
use crate::multigraph::{MultiGraph, VertexId};
use crate::unit_flow::FlowCounters;
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::time::Instant;

/// Algorithm used on the final (possibly contracted) multigraph.
pub const FINAL_CUT_ALGORITHM: &str = "stoer-wagner";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Auto,
    Direct,
    Kt,
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Mode::Auto),
            "direct" => Ok(Mode::Direct),
            "kt" => Ok(Mode::Kt),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathTaken {
    Direct,
    Sparsified,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MinCutError {
    #[error("input graph must be simple")]
    NotSimple,
    #[error("graph needs at least two vertices")]
    TooSmall,
    #[error("sparsification failed: {0}")]
    Sparsify(#[from] KtError),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub sparsify_ms: f64,
    pub final_cut_ms: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MinCutStats {
    pub min_degree: u64,
    /// Why a requested sparsification fell back to the direct path.
    pub fallback: Option<String>,
    pub iterations: usize,
    pub exit: Option<ExitReason>,
    pub gbar_vertices: usize,
    pub gbar_edges: u64,
    pub inner_calls: InnerTally,
    pub flow: FlowCounters,
    /// Value found on the final multigraph, `None` when it is a single vertex.
    pub final_cut_value: Option<u64>,
    pub trivial_cut_won: bool,
    pub final_cut_algorithm: String,
    pub log: Option<EventLog>,
    /// Wall-clock data; not part of any fingerprint.
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinCutAnswer {
    pub value: u64,
    /// Sorted original vertex ids of one side.
    pub witness: Vec<VertexId>,
    pub path_taken: PathTaken,
    pub stats: MinCutStats,
}

/// Exact global minimum cut of a multigraph with multiplicities as weights.
/// The witness is expanded to original vertices through member sets. A
/// disconnected graph yields 0 and one component as witness.
pub fn stoer_wagner(g: &MultiGraph) -> Result<(u64, Vec<VertexId>), MinCutError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(MinCutError::TooSmall);
    }
    let comps = g.connected_components(None);
    if comps.len() > 1 {
        return Ok((0, expand(g, &comps[0])));
    }
    let mut adj: Vec<BTreeMap<usize, u64>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut groups: Vec<Vec<VertexId>> = (0..n).map(|v| vec![v]).collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut best: Option<(u64, Vec<VertexId>)> = None;
    let mut key = vec![0u64; n];
    let mut added = vec![false; n];

    while active.len() > 1 {
        for &v in &active {
            key[v] = 0;
            added[v] = false;
        }
        let mut heap: BinaryHeap<(u64, Reverse<usize>)> = active.iter().map(|&v| (0, Reverse(v))).collect();
        let (mut prev, mut last) = (usize::MAX, usize::MAX);
        let mut cut_of_phase = 0;
        while let Some((k, Reverse(v))) = heap.pop() {
            if added[v] || k != key[v] {
                continue;
            }
            added[v] = true;
            prev = last;
            last = v;
            cut_of_phase = k;
            for (&u, &w) in &adj[v] {
                if !added[u] {
                    key[u] += w;
                    heap.push((key[u], Reverse(u)));
                }
            }
        }
        if best.as_ref().is_none_or(|(b, _)| cut_of_phase < *b) {
            best = Some((cut_of_phase, groups[last].clone()));
        }
        // merge `last` into `prev`
        let moved = std::mem::take(&mut groups[last]);
        groups[prev].extend(moved);
        let edges = std::mem::take(&mut adj[last]);
        for (u, w) in edges {
            adj[u].remove(&last);
            if u != prev {
                *adj[prev].entry(u).or_insert(0) += w;
                *adj[u].entry(prev).or_insert(0) += w;
            }
        }
        active.retain(|&v| v != last);
    }
    let (value, side) = best.expect("at least one phase");
    Ok((value, expand(g, &side)))
}

fn expand(g: &MultiGraph, side: &[VertexId]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = side.iter().flat_map(|&v| g.members(v).iter().copied()).collect();
    out.sort_unstable();
    out
}

/// Puts the witness on the side with fewer vertices, ties broken toward the
/// side without vertex 0.
fn normalize(mut side: Vec<VertexId>, n: usize) -> Vec<VertexId> {
    side.sort_unstable();
    let other = n - side.len();
    let has_zero = side.first() == Some(&0);
    if side.len() > other || (side.len() == other && has_zero) {
        let mut inside = vec![false; n];
        for &v in &side {
            inside[v] = true;
        }
        side = (0..n).filter(|&v| !inside[v]).collect();
    }
    side
}

/// Global minimum cut of a simple graph.
pub fn min_cut(g: &MultiGraph, profile: Profile, mode: Mode) -> Result<MinCutAnswer, MinCutError> {
    if !g.is_simple() {
        return Err(MinCutError::NotSimple);
    }
    let n = g.vertex_count();
    if n < 2 {
        return Err(MinCutError::TooSmall);
    }
    let delta = g.min_degree();
    let mut stats = MinCutStats {
        min_degree: delta,
        final_cut_algorithm: FINAL_CUT_ALGORITHM.to_string(),
        ..Default::default()
    };
    let params = KtParams::for_profile(profile, delta, g.edge_count());
    let connected = g.connected_components(None).len() == 1;
    let floor_ok = delta >= params.delta_floor();
    let sparsify = match mode {
        Mode::Direct => false,
        Mode::Auto => connected && floor_ok,
        Mode::Kt => {
            if !connected {
                stats.fallback = Some("disconnected input".into());
            } else if !floor_ok {
                stats.fallback = Some(format!("min degree {delta} below floor {}", params.delta_floor()));
            }
            connected && floor_ok
        }
    };

    if !sparsify {
        let t = Instant::now();
        let (value, side) = stoer_wagner(g)?;
        stats.timings.final_cut_ms = t.elapsed().as_secs_f64() * 1e3;
        stats.final_cut_value = Some(value);
        stats.gbar_vertices = n;
        stats.gbar_edges = g.edge_count();
        return Ok(MinCutAnswer { value, witness: normalize(side, n), path_taken: PathTaken::Direct, stats });
    }

    let t = Instant::now();
    let (gbar, log) = kt_sparsify(g, params)?;
    stats.timings.sparsify_ms = t.elapsed().as_secs_f64() * 1e3;
    stats.iterations = log.iterations.len();
    stats.exit = Some(log.exit);
    stats.gbar_vertices = gbar.vertex_count();
    stats.gbar_edges = gbar.edge_count();
    for it in &log.iterations {
        stats.inner_calls.local_cut += it.inner.local_cut;
        stats.inner_calls.strong_subset += it.inner.strong_subset;
        stats.inner_calls.whole_strong += it.inner.whole_strong;
        stats.inner_calls.inconclusive += it.inner.inconclusive;
        stats.flow.absorb(&it.flow);
    }
    stats.log = Some(log);

    let t = Instant::now();
    let final_cut = if gbar.vertex_count() >= 2 { Some(stoer_wagner(&gbar)?) } else { None };
    stats.timings.final_cut_ms = t.elapsed().as_secs_f64() * 1e3;
    stats.final_cut_value = final_cut.as_ref().map(|c| c.0);
    let (value, side) = match final_cut {
        Some((v, side)) if v < delta => (v, side),
        _ => {
            stats.trivial_cut_won = true;
            let v = (0..n).min_by_key(|&v| (g.degree(v), v)).expect("non-empty graph");
            (delta, vec![v])
        }
    };
    Ok(MinCutAnswer { value, witness: normalize(side, n), path_taken: PathTaken::Sparsified, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::exact_edge_connectivity;

    fn clique(base: usize, q: usize, e: &mut Vec<(usize, usize, u64)>) {
        for i in 0..q {
            for j in i + 1..q {
                e.push((base + i, base + j, 1));
            }
        }
    }

    #[test]
    fn triangle_and_heavy_pair() {
        let g = MultiGraph::from_edge_list(&[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(stoer_wagner(&g).unwrap().0, 2);
        let g = MultiGraph::from_edge_list(&[(0, 1, 7)]).unwrap();
        assert_eq!(stoer_wagner(&g).unwrap().0, 7);
    }

    #[test]
    fn glued_cliques() {
        let mut e = Vec::new();
        clique(0, 6, &mut e);
        clique(6, 6, &mut e);
        e.extend([(0, 6, 1), (1, 7, 1), (2, 8, 1)]);
        let g = MultiGraph::from_edge_list(&e).unwrap();
        let (v, side) = stoer_wagner(&g).unwrap();
        assert_eq!(v, 3);
        let side = normalize(side, 12);
        assert_eq!(side, (6..12).collect::<Vec<_>>());
        assert_eq!(g.cut_stats(&side).unwrap().boundary, 3);
    }

    #[test]
    fn disconnected_is_zero() {
        let g = MultiGraph::from_edge_list(&[(0, 1, 1), (2, 3, 1)]).unwrap();
        let ans = min_cut(&g, Profile::Desk, Mode::Auto).unwrap();
        assert_eq!(ans.value, 0);
        assert_eq!(g.cut_stats(&ans.witness).unwrap().boundary, 0);
    }

    #[test]
    fn cycle_in_every_mode() {
        let e: Vec<_> = (0..7).map(|i| (i, (i + 1) % 7, 1)).collect();
        let g = MultiGraph::from_edge_list(&e).unwrap();
        for mode in [Mode::Auto, Mode::Direct, Mode::Kt] {
            let ans = min_cut(&g, Profile::Desk, mode).unwrap();
            assert_eq!(ans.value, 2);
            assert_eq!(ans.path_taken, PathTaken::Direct);
        }
        assert!(min_cut(&g, Profile::Desk, Mode::Kt).unwrap().stats.fallback.is_some());
    }

    #[test]
    fn clique_gives_singleton() {
        let mut e = Vec::new();
        clique(0, 8, &mut e);
        let g = MultiGraph::from_edge_list(&e).unwrap();
        let ans = min_cut(&g, Profile::Desk, Mode::Direct).unwrap();
        assert_eq!(ans.value, 7);
        assert_eq!(ans.witness.len(), 1);
    }

    #[test]
    fn sparsified_barbell_matches_oracle() {
        let mut e = Vec::new();
        clique(0, 70, &mut e);
        clique(70, 70, &mut e);
        e.extend((0..5).map(|i| (i, 70 + i, 1)));
        let g = MultiGraph::from_edge_list(&e).unwrap();
        let ans = min_cut(&g, Profile::Desk, Mode::Kt).unwrap();
        assert_eq!(ans.path_taken, PathTaken::Sparsified);
        assert_eq!(ans.value, exact_edge_connectivity(&g).unwrap().0);
        assert_eq!(g.cut_stats(&ans.witness).unwrap().boundary, ans.value);
        assert!(ans.stats.gbar_vertices < g.vertex_count());
    }
}

//! One strength-reduction step on a trimmed component.
//!
//! Builds a sparse set of edge bundles, routes each group's spread-out
//! supply with [`excess_scaling`](crate::excess_scaling) in lockstep, keeps
//! the bundles that routed well, and runs a last unit flow on the pooled,
//! scaled-down supply. The result is a local cut, a certified strong subset,
//! or a certificate for the whole component.

use crate::excess_scaling::{ScalingCase, ScalingOutcome, ScalingParams, ScalingRun, StepStatus};
use crate::multigraph::{CutResult, MultiGraph, VertexId, VertexKind};
use crate::scalar::{ln_floor1, lnln_floor1};
use crate::supply::{Ledger, OriginId, SourceFunction};
use crate::unit_flow::{self, FlowCase, FlowCounters, FlowError, FlowParams, SweepMode, FINE_CONSTANT};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeBundle {
    pub center: VertexId,
    /// `(neighbour, parallel edges used)`, sorted by neighbour.
    pub edges: Vec<(VertexId, u64)>,
}

impl EdgeBundle {
    pub fn size(&self) -> u64 {
        self.edges.iter().map(|&(_, k)| k).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleSet {
    pub bundles: Vec<EdgeBundle>,
    /// In-degree divisor `α` (the construction uses `γ`).
    pub alpha: u64,
    pub z: u64,
}

impl BundleSet {
    /// Recounts edge-disjointness, bundle sizes and the in-degree bound.
    pub fn check(&self, c: &MultiGraph) -> Result<(), String> {
        let mut used = vec![0u64; c.entry_count()];
        let mut indeg = vec![0u64; c.vertex_count()];
        for (i, b) in self.bundles.iter().enumerate() {
            if b.size() < self.z {
                return Err(format!("bundle {i} has {} < Z = {} edges", b.size(), self.z));
            }
            for &(u, k) in &b.edges {
                let e = find_entry(c, b.center, u).ok_or_else(|| format!("bundle {i}: no edge {}-{u}", b.center))?;
                used[e] += k;
                used[c.reverse(e)] += k;
                indeg[u] += k;
            }
        }
        for e in 0..c.entry_count() {
            if used[e] > c.multiplicity(e) {
                return Err(format!("entry {e} used {} times, multiplicity {}", used[e], c.multiplicity(e)));
            }
        }
        for u in 0..c.vertex_count() {
            if indeg[u] * self.alpha > c.degree(u) {
                return Err(format!("vertex {u} in-degree {} above d/α", indeg[u]));
            }
        }
        Ok(())
    }
}

fn find_entry(g: &MultiGraph, v: VertexId, u: VertexId) -> Option<usize> {
    let r = g.entries(v);
    let row: Vec<VertexId> = r.clone().map(|e| g.target(e)).collect();
    row.binary_search(&u).ok().map(|p| r.start + p)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InnerError {
    #[error("{count} bundles of {z} edges with γ = {gamma} exceed the 2·count·Z·γ <= m = {m} budget")]
    BundleBudget { count: usize, z: u64, gamma: u64, m: u64 },
    #[error("bundle construction ran out of live vertices after {built} bundles")]
    BundlesExhausted { built: usize },
    #[error("strength s = {s} outside [{s0}, {m}]")]
    StrengthOutOfRange { s: u64, s0: u64, m: u64 },
    #[error("combine_preflows got a run that ended with a cut")]
    RunNotRouted,
    #[error("invalid inner parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Scaling(#[from] crate::excess_scaling::ScalingError),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

/// Working state of the live/dead construction.
struct LiveGraph<'a> {
    g: &'a MultiGraph,
    rem: Vec<u64>,
    deg: Vec<u64>,
    live: Vec<bool>,
    gamma: u64,
    z: u64,
}

impl<'a> LiveGraph<'a> {
    fn new(g: &'a MultiGraph, gamma: u64, z: u64) -> Self {
        let mut lg = LiveGraph {
            g,
            rem: g.multiplicities().to_vec(),
            deg: g.degrees().to_vec(),
            live: vec![true; g.vertex_count()],
            gamma,
            z,
        };
        let all: Vec<VertexId> = (0..g.vertex_count()).collect();
        lg.kill_dead(all);
        lg
    }

    fn threshold(&self, v: VertexId) -> u64 {
        match self.g.kind(v) {
            VertexKind::Super => self.gamma * self.z,
            VertexKind::Regular => self.z,
        }
    }

    fn drop_entry(&mut self, e: usize, k: u64, touched: &mut Vec<VertexId>) {
        let r = self.g.reverse(e);
        self.rem[e] -= k;
        self.rem[r] -= k;
        let (a, b) = (self.g.target(r), self.g.target(e));
        self.deg[a] -= k;
        self.deg[b] -= k;
        touched.push(a);
        touched.push(b);
    }

    fn kill_dead(&mut self, mut work: Vec<VertexId>) {
        while let Some(v) = work.pop() {
            if !self.live[v] || self.deg[v] >= self.threshold(v) {
                continue;
            }
            self.live[v] = false;
            for e in self.g.entries(v) {
                let k = self.rem[e];
                if k > 0 {
                    self.drop_entry(e, k, &mut work);
                }
            }
        }
    }

    /// Tries to carve one bundle at `v`.
    fn carve(&mut self, v: VertexId) -> Option<EdgeBundle> {
        let g = self.g;
        let mut picks: Vec<(usize, u64)> = Vec::new();
        let mut got = 0;
        for e in g.entries(v) {
            if got == self.z {
                break;
            }
            let u = g.target(e);
            if !self.live[u] || self.rem[e] == 0 {
                continue;
            }
            let t = self.rem[e].min(self.deg[u] / self.gamma).min(self.z - got);
            if t > 0 {
                picks.push((e, t));
                got += t;
            }
        }
        if got < self.z {
            return None;
        }
        let mut touched = Vec::new();
        for &(e, t) in &picks {
            self.drop_entry(e, t, &mut touched);
            let u = g.target(e);
            let mut extra = (self.gamma - 1) * t;
            for f in g.entries(u) {
                if extra == 0 {
                    break;
                }
                let k = self.rem[f].min(extra);
                if k > 0 {
                    self.drop_entry(f, k, &mut touched);
                    extra -= k;
                }
            }
        }
        self.kill_dead(touched);
        Some(EdgeBundle { center: v, edges: picks.into_iter().map(|(e, t)| (g.target(e), t)).collect() })
    }
}

fn carve_bundles(c: &MultiGraph, count: usize, gamma: u64, z: u64) -> Vec<EdgeBundle> {
    let mut lg = LiveGraph::new(c, gamma, z);
    let n = c.vertex_count();
    let supers: Vec<VertexId> = (0..n).filter(|&v| c.kind(v) == VertexKind::Super).collect();
    let regulars: Vec<VertexId> = (0..n).filter(|&v| c.kind(v) == VertexKind::Regular).collect();
    let mut out = Vec::with_capacity(count);
    // cyclic cursors spread centres over the candidates
    let mut cursors = [0usize; 2];
    'outer: while out.len() < count {
        for (which, pool) in [&supers, &regulars].into_iter().enumerate() {
            let len = pool.len();
            for step in 0..len {
                let v = pool[(cursors[which] + step) % len];
                if !lg.live[v] {
                    continue;
                }
                if let Some(b) = lg.carve(v) {
                    cursors[which] = (cursors[which] + step + 1) % len;
                    out.push(b);
                    continue 'outer;
                }
            }
        }
        break;
    }
    out
}

/// Builds exactly `count` bundles of `z` edges, `(γ, z)`-sparse.
pub fn build_sparse_bundles(c: &MultiGraph, count: usize, gamma: u64, z: u64) -> Result<BundleSet, InnerError> {
    if gamma == 0 || z == 0 {
        return Err(InnerError::Params("γ and Z must be positive".into()));
    }
    if 2 * count as u64 * z * gamma > c.edge_count() {
        return Err(InnerError::BundleBudget { count, z, gamma, m: c.edge_count() });
    }
    let bundles = carve_bundles(c, count, gamma, z);
    if bundles.len() < count {
        return Err(InnerError::BundlesExhausted { built: bundles.len() });
    }
    Ok(BundleSet { bundles, alpha: gamma, z })
}

/// Spreads `sigma` supply from each bundle's centre along its edges. Bundle
/// `i` gets origin `origin_base + i`. `sigma` must be a multiple of every
/// bundle size.
pub fn initial_spreadout(c: &MultiGraph, bundles: &[EdgeBundle], sigma: u64, origin_base: OriginId) -> SourceFunction {
    let mut delta = SourceFunction::new(c.vertex_count());
    for (i, b) in bundles.iter().enumerate() {
        let per_edge = sigma / b.size();
        debug_assert_eq!(per_edge * b.size(), sigma, "sigma not divisible by bundle size");
        for &(u, k) in &b.edges {
            delta.add(u, origin_base + i as OriginId, per_edge * k);
        }
    }
    delta
}

/// Pools the kept, non-excess supply of several routed runs, dividing each
/// origin's share at each vertex by `scale` (rounding down).
pub fn combine_preflows(
    c: &MultiGraph,
    runs: &[(&ScalingOutcome, &BTreeSet<OriginId>)],
    scale: u64,
) -> Result<SourceFunction, InnerError> {
    let mut out = vec![Ledger::new(); c.vertex_count()];
    for (outcome, kept) in runs {
        if outcome.case != ScalingCase::Routed {
            return Err(InnerError::RunNotRouted);
        }
        combine_one(c, outcome.routed.ledgers(), kept, scale, &mut out);
    }
    Ok(SourceFunction::from_ledgers(out))
}

fn combine_one(c: &MultiGraph, held: &[Ledger], kept: &BTreeSet<OriginId>, scale: u64, out: &mut [Ledger]) {
    for (v, l) in held.iter().enumerate() {
        let (within, _) = l.split_ascending(c.degree(v));
        for &(o, u) in within.entries() {
            if kept.contains(&o) {
                out[v].add(o, u / scale);
            }
        }
    }
}

/// Constants for one inner call.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnerParams {
    /// Number of bundle groups `k`, one scaling run each.
    pub groups: usize,
    pub tau: f64,
    /// Unit capacity `U` of the scaling runs.
    pub capacity: u64,
    pub height: u32,
    /// Width of the scaling phases.
    pub phase_width: u64,
    /// Divisor applied to kept supply before the final flow.
    pub scale: u64,
    /// A bundle is kept when `routed * keep_den >= keep_num * σ`.
    pub keep_num: u64,
    pub keep_den: u64,
    /// Final flow capacity is `max(final_capacity_min, ⌊s / (final_capacity_div · δ)⌋)`.
    pub final_capacity_div: u64,
    pub final_capacity_min: u64,
    pub fine_constant: f64,
    pub delta: u64,
    pub gamma: u64,
    /// Bundle size `Z`.
    pub z: u64,
    pub s0: u64,
    /// `m_G`, edges of the input graph, for the fine conductance bound.
    pub m_global: u64,
}

impl InnerParams {
    /// Constants sized for graphs of a few thousand vertices.
    pub fn desk(m_global: u64, delta: u64, gamma: u64, s0: u64) -> Self {
        let lm = ln_floor1(m_global as f64);
        InnerParams {
            groups: 8,
            tau: 0.1,
            capacity: 2,
            height: (2.0 * lm * lnln_floor1(m_global as f64)).ceil() as u32 + 1,
            phase_width: 3,
            scale: 4,
            keep_num: 4,
            keep_den: 5,
            final_capacity_div: 20,
            final_capacity_min: 2,
            fine_constant: FINE_CONSTANT,
            delta,
            gamma,
            z: (delta / 10).max(1),
            s0,
            m_global,
        }
    }

    /// The asymptotic constants, usable only on very large inputs.
    pub fn paper(m_global: u64, delta: u64, gamma: u64) -> Self {
        let lm = ln_floor1(m_global as f64);
        InnerParams {
            groups: 5000,
            tau: 0.1,
            capacity: (100.0 * lm).ceil() as u64,
            height: (1000.0 * lm * lnln_floor1(m_global as f64)).ceil() as u32,
            phase_width: 3,
            scale: 200,
            keep_num: 4,
            keep_den: 5,
            final_capacity_div: 20,
            final_capacity_min: 1,
            fine_constant: FINE_CONSTANT,
            delta,
            gamma,
            z: (delta / 10).max(1),
            s0: 1000 * gamma * delta,
            m_global,
        }
    }

    pub fn final_width(&self) -> u64 {
        self.groups as u64 / self.scale
    }

    fn validate(&self) -> Result<(), InnerError> {
        if self.groups == 0 || self.scale == 0 || self.keep_den == 0 {
            return Err(InnerError::Params("groups, scale and keep_den must be positive".into()));
        }
        if self.final_width() < 2 {
            return Err(InnerError::Params(format!(
                "groups / scale = {} must be at least 2",
                self.final_width()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum InnerCase {
    /// A low-conductance cut found by one of the scaling runs.
    LocalCut(CutResult),
    /// `A` is certified `new_strength`-strong.
    StrongSubset { cut: CutResult, new_strength: u64 },
    /// The whole component is certified `new_strength`-strong.
    WholeStrong { new_strength: u64 },
    /// The final flow saturated nothing; no certificate.
    Inconclusive,
}

impl InnerCase {
    pub fn name(&self) -> &'static str {
        match self {
            InnerCase::LocalCut(_) => "local_cut",
            InnerCase::StrongSubset { .. } => "strong_subset",
            InnerCase::WholeStrong { .. } => "whole_strong",
            InnerCase::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct InnerStats {
    pub bundles: usize,
    /// Bundle count dropped to fit the construction budget.
    pub bundles_requested: usize,
    pub kept: usize,
    pub scaling_phases: u32,
    pub supply_x: u64,
    pub flow: FlowCounters,
    pub final_case: Option<String>,
    pub sweep_fallbacks: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InnerOutcome {
    pub case: InnerCase,
    pub stats: InnerStats,
}

/// `⌈3s/5⌉`.
pub fn reduced_strength(s: u64) -> u64 {
    (3 * s).div_ceil(5)
}

/// Runs one inner step on component `c` (local ids, degrees internal to
/// the component) currently certified `s`-strong.
pub fn inner_procedure(c: &MultiGraph, s: u64, p: &InnerParams) -> Result<InnerOutcome, InnerError> {
    p.validate()?;
    let m = c.edge_count();
    if s < p.s0 || s > m {
        return Err(InnerError::StrengthOutOfRange { s, s0: p.s0, m });
    }
    let z = p.z;
    let per_group = ((m / s) as usize).max(1);
    let requested = p.groups * per_group;
    let budget = (m / (2 * z * p.gamma)) as usize;
    let total = requested.min(budget);
    if total == 0 {
        return Err(InnerError::BundleBudget { count: 1, z, gamma: p.gamma, m });
    }
    let bundles = carve_bundles(c, total, p.gamma, z);
    if bundles.is_empty() {
        return Err(InnerError::BundlesExhausted { built: 0 });
    }
    let sigma = (2 * s).div_ceil(z) * z;
    let mut stats = InnerStats { bundles: bundles.len(), bundles_requested: requested, ..Default::default() };

    // split into up to k groups, round robin keeps group sizes even
    let groups = p.groups.min(bundles.len());
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); groups];
    for i in 0..bundles.len() {
        members[i % groups].push(i);
    }
    let sp = ScalingParams {
        tau: p.tau,
        capacity: p.capacity,
        height: p.height.max((m as f64).ln().ceil() as u32).max(1),
        width: p.phase_width,
        mode: SweepMode::Fine { m_prime: p.m_global, constant: p.fine_constant },
    };
    let deltas: Vec<SourceFunction> = members
        .iter()
        .map(|idx| {
            let mut d = SourceFunction::new(c.vertex_count());
            for &i in idx {
                let one = initial_spreadout(c, std::slice::from_ref(&bundles[i]), sigma, i as OriginId);
                for (v, l) in one.ledgers().iter().enumerate() {
                    for &(o, u) in l.entries() {
                        d.add(v, o, u);
                    }
                }
            }
            d
        })
        .collect();
    let mut runs: Vec<ScalingRun> = deltas.iter().map(|d| ScalingRun::new(c, d, sp)).collect::<Result<_, _>>()?;

    // lockstep: one phase per unfinished run per round
    loop {
        let mut progressed = false;
        for run in runs.iter_mut() {
            if run.is_done() {
                continue;
            }
            progressed = true;
            if run.step()? == StepStatus::Done {
                if let Some(k) = run.cut().cloned() {
                    for r in &runs {
                        stats.flow.absorb(r.counters());
                        stats.scaling_phases += r.phases();
                    }
                    return Ok(InnerOutcome { case: InnerCase::LocalCut(k), stats });
                }
            }
        }
        if !progressed {
            break;
        }
    }
    let outcomes: Vec<ScalingOutcome> = runs.into_iter().map(ScalingRun::finish).collect();
    for o in &outcomes {
        stats.flow.absorb(&o.counters);
        stats.scaling_phases += o.phases;
        stats.sweep_fallbacks += o.sweep_fallbacks;
    }

    let keep: Vec<BTreeSet<OriginId>> = outcomes
        .iter()
        .map(|o| {
            o.routed_per_origin()
                .into_iter()
                .filter(|&(_, r)| r * p.keep_den >= p.keep_num * sigma)
                .map(|(origin, _)| origin)
                .collect()
        })
        .collect();
    stats.kept = keep.iter().map(BTreeSet::len).sum();
    let pairs: Vec<(&ScalingOutcome, &BTreeSet<OriginId>)> = outcomes.iter().zip(keep.iter()).collect();
    let delta_x = combine_preflows(c, &pairs, p.scale)?;
    stats.supply_x = delta_x.total();

    let new_strength = reduced_strength(s).max(p.s0);
    let fp = FlowParams {
        capacity: (s / (p.final_capacity_div * p.delta.max(1))).max(p.final_capacity_min.max(1)),
        height: sp.height,
        width: p.final_width(),
    };
    let state = unit_flow::push_relabel(c, &delta_x, fp)?;
    stats.flow.absorb(&state.counters);
    let case = match unit_flow::classify(c, &state, sp.mode) {
        Err(FlowError::SweepFailed { .. }) => {
            stats.sweep_fallbacks += 1;
            unit_flow::classify(c, &state, SweepMode::Coarse).ok()
        }
        other => Some(other?),
    };
    stats.final_case = Some(case.as_ref().map_or("sweep_failed", FlowCase::name).to_string());
    let saturated = || -> Vec<VertexId> { (0..c.vertex_count()).filter(|&v| state.supply(v) >= c.degree(v)).collect() };
    let case = match case {
        Some(FlowCase::AllSaturated) => InnerCase::WholeStrong { new_strength },
        Some(FlowCase::Cut(sc)) => InnerCase::StrongSubset { cut: sc.cut, new_strength },
        Some(FlowCase::Feasible) | None => {
            let b = saturated();
            if b.is_empty() {
                InnerCase::Inconclusive
            } else if b.len() == c.vertex_count() {
                InnerCase::WholeStrong { new_strength }
            } else {
                InnerCase::StrongSubset { cut: c.cut_stats(&b).expect("saturated set in range"), new_strength }
            }
        }
    };
    Ok(InnerOutcome { case, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::VertexInfo;

    fn clique(q: usize) -> MultiGraph {
        let mut e = Vec::new();
        for i in 0..q {
            for j in i + 1..q {
                e.push((i, j, 1));
            }
        }
        MultiGraph::from_edge_list(&e).unwrap()
    }

    #[test]
    fn clique_bundles_are_sparse() {
        let g = clique(41);
        let set = build_sparse_bundles(&g, 10, 2, 4).unwrap();
        assert_eq!(set.bundles.len(), 10);
        assert!(set.bundles.iter().all(|b| b.size() == 4));
        set.check(&g).unwrap();
    }

    #[test]
    fn budget_violation_is_reported() {
        let g = clique(5);
        let err = build_sparse_bundles(&g, 3, 1, 2).unwrap_err();
        assert!(matches!(err, InnerError::BundleBudget { count: 3, .. }));
    }

    #[test]
    fn supervertex_centres_first_bundle() {
        let mut info: Vec<VertexInfo> = (0..9).map(VertexInfo::regular).collect();
        info[8] = VertexInfo { kind: VertexKind::Super, members: vec![8, 9, 10] };
        let mut e = Vec::new();
        for i in 0..8 {
            for j in i + 1..8 {
                e.push((i, j, 1));
            }
            e.push((i, 8, 2));
        }
        let g = MultiGraph::from_parts(info, &e).unwrap();
        let set = build_sparse_bundles(&g, 2, 2, 3).unwrap();
        assert_eq!(set.bundles[0].center, 8);
        set.check(&g).unwrap();
    }

    #[test]
    fn spreadout_weights_by_multiplicity() {
        let g = MultiGraph::from_edge_list(&[(0, 1, 2), (0, 2, 1), (0, 3, 1), (1, 2, 1)]).unwrap();
        let b = EdgeBundle { center: 0, edges: vec![(1, 2), (2, 1), (3, 1)] };
        let d = initial_spreadout(&g, &[b], 8, 7);
        assert_eq!(d.totals(), vec![0, 4, 2, 2]);
        assert_eq!(d.ledger(1).entries(), &[(7, 4)]);
        let uniform = EdgeBundle { center: 0, edges: vec![(1, 1), (2, 1), (3, 1), (1, 1)] };
        let two = initial_spreadout(&g, &[uniform.clone(), uniform], 8, 0);
        assert_eq!(two.ledger(1).entries(), &[(0, 4), (1, 4)]);
    }

    #[test]
    fn combine_clamps_excess_filters_and_scales() {
        let g = MultiGraph::from_edge_list(&[(0, 1, 2), (1, 2, 2), (2, 3, 2), (3, 0, 2)]).unwrap();
        // every vertex has degree 4
        let mut held = vec![Ledger::new(); 4];
        held[0].add(0, 4);
        held[0].add(1, 5);
        held[1].add(1, 3);
        held[2].add(2, 2);
        let kept: BTreeSet<OriginId> = [0, 1].into_iter().collect();
        let mut out = vec![Ledger::new(); 4];
        combine_one(&g, &held, &kept, 2, &mut out);
        // vertex 0: first 4 units in ascending origin order are origin 0
        assert_eq!(out[0].entries(), &[(0, 2)]);
        assert_eq!(out[1].entries(), &[(1, 1)]);
        assert!(out[2].is_empty());
    }

    #[test]
    fn strength_reduction_rounds_up() {
        assert_eq!(reduced_strength(10), 6);
        assert_eq!(reduced_strength(11), 7);
    }

    #[test]
    fn rejects_strength_outside_range() {
        let g = clique(6);
        let p = InnerParams::desk(15, 5, 1, 5);
        assert!(matches!(inner_procedure(&g, 16, &p), Err(InnerError::StrengthOutOfRange { .. })));
    }
}

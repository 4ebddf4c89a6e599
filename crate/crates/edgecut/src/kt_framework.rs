//! Contraction framework that shrinks a graph while keeping every
//! non-trivial cut of size at most `δ`.
//!
//! Each outer iteration copies `Ḡ` into a working subgraph `H`, drops
//! passive supervertices, trims, then drives every component of `H` down to
//! a cluster with repeated [`inner_procedure`] calls. Clusters are shaved
//! and scraped; what remains (the cores) is contracted, followed by any pair
//! joined by more than `δ` parallel edges.

use crate::inner_procedure::{inner_procedure, InnerCase, InnerError, InnerParams};
use crate::multigraph::{MultiGraph, VertexId, VertexKind};
use crate::unit_flow::FlowCounters;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Desk,
    Paper,
}

impl std::str::FromStr for Profile {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "desk" => Ok(Profile::Desk),
            "paper" => Ok(Profile::Paper),
            other => Err(format!("unknown profile {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KtParams {
    pub profile: Profile,
    pub delta: u64,
    pub gamma: u64,
    pub c1: u64,
    pub s0: u64,
    pub inner: InnerParams,
    pub max_iterations: u32,
    /// Keep per-iteration snapshots for oracle checks (small inputs only).
    pub trace: bool,
}

impl KtParams {
    /// `γ = 1`, `c₁ = 3`, `s₀ = γδ`.
    pub fn desk(delta: u64, m_global: u64) -> Self {
        let (gamma, c1) = (1, 3);
        let s0 = gamma * delta;
        KtParams {
            profile: Profile::Desk,
            delta,
            gamma,
            c1,
            s0,
            inner: InnerParams::desk(m_global, delta, gamma, s0),
            max_iterations: 64,
            trace: false,
        }
    }

    /// `γ = ⌈ln m⌉`, `s₀ = 1000γδ`, `c₁` the smallest value with
    /// `(2/5)·c₁γδ >= s₀`.
    pub fn paper(delta: u64, m_global: u64) -> Self {
        let gamma = (m_global.max(2) as f64).ln().ceil() as u64;
        let c1 = 2500;
        let inner = InnerParams::paper(m_global, delta, gamma);
        KtParams {
            profile: Profile::Paper,
            delta,
            gamma,
            c1,
            s0: inner.s0,
            inner,
            max_iterations: 64,
            trace: false,
        }
    }

    pub fn for_profile(profile: Profile, delta: u64, m_global: u64) -> Self {
        match profile {
            Profile::Desk => KtParams::desk(delta, m_global),
            Profile::Paper => KtParams::paper(delta, m_global),
        }
    }

    /// Smallest `δ` the cluster argument tolerates: `20·c₁·γ`.
    pub fn delta_floor(&self) -> u64 {
        20 * self.c1 * self.gamma
    }

    pub fn passive_threshold(&self) -> u64 {
        self.c1 * self.gamma * self.delta
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KtError {
    #[error("input graph must be simple")]
    NotSimple,
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("minimum degree {delta} is below the floor {floor}; use the direct path")]
    BelowFloor { delta: u64, floor: u64 },
    #[error(transparent)]
    Inner(#[from] InnerError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    WholeStrong,
    StrongSubset,
    Cluster,
}

/// A strength or cluster claim, in `Ḡ` ids of its iteration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub vertices: Vec<VertexId>,
    pub strength: u64,
    /// Degrees inside the certifying component of `H`, aligned with `vertices`.
    pub degrees: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub gbar: MultiGraph,
    pub certificates: Vec<Certificate>,
    pub clusters: Vec<Vec<VertexId>>,
    pub cores: Vec<Vec<VertexId>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnerTally {
    pub local_cut: u64,
    pub strong_subset: u64,
    pub whole_strong: u64,
    pub inconclusive: u64,
}

impl InnerTally {
    pub fn total(&self) -> u64 {
        self.local_cut + self.strong_subset + self.whole_strong + self.inconclusive
    }

    fn count(&mut self, case: &InnerCase) {
        match case {
            InnerCase::LocalCut(_) => self.local_cut += 1,
            InnerCase::StrongSubset { .. } => self.strong_subset += 1,
            InnerCase::WholeStrong { .. } => self.whole_strong += 1,
            InnerCase::Inconclusive => self.inconclusive += 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct IterationLog {
    pub vertices: usize,
    pub edges: u64,
    pub passive_removed: usize,
    /// Edges at passive supervertices.
    pub type1: u64,
    /// Trimmed edges.
    pub type2: u64,
    /// Edges removed on cuts found by the inner procedure.
    pub type3: u64,
    /// Shaved and scraped edges.
    pub type4: u64,
    /// `H` edges left inside cores at the end.
    pub kept_in_cores: u64,
    pub inner: InnerTally,
    pub clusters: usize,
    pub cores: usize,
    pub edges_after_cores: u64,
    pub heavy_merges: usize,
    pub vertices_after: usize,
    pub edges_after: u64,
    pub passive_edges_after: u64,
    pub flow: FlowCounters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitReason {
    PassiveFraction,
    NoProgress,
    Collapsed,
    IterationCap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventLog {
    pub iterations: Vec<IterationLog>,
    pub exit: ExitReason,
    #[serde(skip)]
    pub traces: Vec<IterationTraceSlot>,
}

/// Wrapper so the log stays comparable without comparing whole graphs.
#[derive(Debug, Clone)]
pub struct IterationTraceSlot(pub IterationTrace);

impl PartialEq for IterationTraceSlot {
    fn eq(&self, other: &Self) -> bool {
        self.0.certificates == other.0.certificates && self.0.cores == other.0.cores
    }
}

/// `Ḡ` plus the working subgraph `H` of one outer iteration.
pub struct KtState<'g> {
    pub gbar: &'g MultiGraph,
    params: KtParams,
    /// Remaining multiplicity of each entry in `H`, symmetric.
    alive: Vec<u64>,
    h_deg: Vec<u64>,
    in_h: Vec<bool>,
    pub log: IterationLog,
    pub certificates: Option<Vec<Certificate>>,
}

impl<'g> KtState<'g> {
    /// `H = Ḡ`.
    pub fn new(gbar: &'g MultiGraph, params: KtParams) -> Self {
        KtState {
            gbar,
            params,
            alive: gbar.multiplicities().to_vec(),
            h_deg: gbar.degrees().to_vec(),
            in_h: vec![true; gbar.vertex_count()],
            log: IterationLog { vertices: gbar.vertex_count(), edges: gbar.edge_count(), ..Default::default() },
            certificates: params.trace.then(Vec::new),
        }
    }

    pub fn in_h(&self, v: VertexId) -> bool {
        self.in_h[v]
    }

    pub fn h_degree(&self, v: VertexId) -> u64 {
        self.h_deg[v]
    }

    pub fn alive(&self) -> &[u64] {
        &self.alive
    }

    pub fn h_edge_count(&self) -> u64 {
        self.h_deg.iter().sum::<u64>() / 2
    }

    fn kill_entry(&mut self, e: usize, touched: &mut Vec<VertexId>) -> u64 {
        let k = self.alive[e];
        if k == 0 {
            return 0;
        }
        let r = self.gbar.reverse(e);
        let (v, u) = (self.gbar.target(r), self.gbar.target(e));
        self.alive[e] = 0;
        self.alive[r] = 0;
        self.h_deg[v] -= k;
        self.h_deg[u] -= k;
        touched.push(u);
        k
    }

    /// Drops `v` and its `H` edges; returns the edge count removed.
    fn drop_vertex(&mut self, v: VertexId, touched: &mut Vec<VertexId>) -> u64 {
        self.in_h[v] = false;
        self.gbar.entries(v).map(|e| self.kill_entry(e, touched)).sum()
    }

    fn trim_from(&mut self, mut work: Vec<VertexId>) -> u64 {
        let mut removed = 0;
        while let Some(v) = work.pop() {
            if self.in_h[v] && 5 * self.h_deg[v] <= 2 * self.gbar.degree(v) {
                removed += self.drop_vertex(v, &mut work);
            }
        }
        removed
    }

    /// Removes every vertex with `d_H(v) <= (2/5)·d_Ḡ(v)`, recursively.
    /// `scope` limits the starting worklist. Returns removed edges.
    pub fn trim(&mut self, scope: Option<&[VertexId]>) -> u64 {
        let work = match scope {
            Some(s) => s.to_vec(),
            None => (0..self.gbar.vertex_count()).rev().collect(),
        };
        let removed = self.trim_from(work);
        self.log.type2 += removed;
        removed
    }

    /// Removes supervertices with `d_Ḡ < c₁γδ`, then trims.
    pub fn remove_passive(&mut self) -> Vec<VertexId> {
        let threshold = self.params.passive_threshold();
        let passive: Vec<VertexId> = (0..self.gbar.vertex_count())
            .filter(|&v| self.in_h[v] && self.gbar.kind(v) == VertexKind::Super && self.gbar.degree(v) < threshold)
            .collect();
        let mut touched = Vec::new();
        for &v in &passive {
            self.log.type1 += self.drop_vertex(v, &mut touched);
        }
        self.log.passive_removed += passive.len();
        self.trim(Some(&touched));
        passive
    }

    /// Connected components of `H` restricted to `vertices` (all of `H` if
    /// `None`). Each is sorted; ordered by smallest id.
    pub fn components(&self, vertices: Option<&[VertexId]>) -> Vec<Vec<VertexId>> {
        let n = self.gbar.vertex_count();
        let (starts, mut seen): (Vec<VertexId>, Vec<bool>) = match vertices {
            Some(vs) => {
                let mut seen = vec![true; n];
                for &v in vs {
                    seen[v] = false;
                }
                (vs.to_vec(), seen)
            }
            None => ((0..n).collect(), vec![false; n]),
        };
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for &s in &starts {
            if seen[s] || !self.in_h[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for e in self.gbar.entries(v) {
                    let u = self.gbar.target(e);
                    if self.alive[e] > 0 && !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out.sort_by_key(|c| c[0]);
        out
    }

    fn component_degrees(&self, c: &[VertexId]) -> Vec<u64> {
        c.iter().map(|&v| self.h_deg[v]).collect()
    }

    fn record(&mut self, kind: CertKind, vertices: Vec<VertexId>, strength: u64, degrees: Vec<u64>) {
        if let Some(list) = self.certificates.as_mut() {
            list.push(Certificate { kind, vertices, strength, degrees });
        }
    }

    /// Removes the `H` edges between `side` and the rest of `c`; returns
    /// the count.
    fn cut_off(&mut self, c: &[VertexId], side: &[VertexId]) -> (u64, Vec<VertexId>) {
        let n = self.gbar.vertex_count();
        let mut mark = vec![0u8; n];
        for &v in c {
            mark[v] = 1;
        }
        for &v in side {
            mark[v] = 2;
        }
        let mut touched = Vec::new();
        let mut removed = 0;
        for &v in side {
            for e in self.gbar.entries(v) {
                if mark[self.gbar.target(e)] == 1 {
                    removed += self.kill_entry(e, &mut touched);
                }
            }
        }
        touched.extend_from_slice(side);
        (removed, touched)
    }

    /// Drives component `c` down to clusters; returns the clusters found.
    pub fn middle_loop(&mut self, c: Vec<VertexId>) -> Result<Vec<Vec<VertexId>>, KtError> {
        let mut clusters = Vec::new();
        let s_init = self.internal_edges(&c);
        let mut work = vec![(c, s_init)];
        while let Some((c, s)) = work.pop() {
            let m_c = self.internal_edges(&c);
            let s = s.min(m_c);
            if s <= self.params.s0 {
                let deg = self.component_degrees(&c);
                self.record(CertKind::Cluster, c.clone(), s, deg);
                clusters.push(c);
                continue;
            }
            let (local, map) = self.gbar.induced(&c, Some(&self.alive));
            let outcome = inner_procedure(&local, s, &self.params.inner)?;
            self.log.inner.count(&outcome.case);
            self.log.flow.absorb(&outcome.stats.flow);
            let global = |side: &[VertexId]| -> Vec<VertexId> { side.iter().map(|&i| map[i]).collect() };
            let (side, child_strength) = match outcome.case {
                InnerCase::WholeStrong { new_strength } => {
                    let deg = self.component_degrees(&c);
                    self.record(CertKind::WholeStrong, c.clone(), new_strength, deg);
                    work.push((c, new_strength));
                    continue;
                }
                InnerCase::Inconclusive => {
                    let mut touched = Vec::new();
                    for &v in &c {
                        self.log.type3 += self.drop_vertex(v, &mut touched);
                    }
                    continue;
                }
                InnerCase::LocalCut(k) => (global(&k.side), None),
                InnerCase::StrongSubset { cut, new_strength } => {
                    let a = global(&cut.side);
                    let all = self.component_degrees(&c);
                    let deg = a.iter().map(|v| all[c.binary_search(v).expect("subset of component")]).collect();
                    self.record(CertKind::StrongSubset, a.clone(), new_strength, deg);
                    (a, Some(new_strength))
                }
            };
            let (removed, touched) = self.cut_off(&c, &side);
            self.log.type3 += removed;
            self.log.type2 += self.trim_from(touched);
            let mut children = self.components(Some(&c));
            children.reverse();
            for child in children {
                let strong = child_strength.filter(|_| child.iter().all(|v| side.binary_search(v).is_ok()));
                work.push((child, strong.unwrap_or(s)));
            }
        }
        clusters.sort_by_key(|c| c[0]);
        Ok(clusters)
    }

    /// `H` edges with both ends in `c`.
    fn internal_edges(&self, c: &[VertexId]) -> u64 {
        c.iter().map(|&v| self.h_deg[v]).sum::<u64>() / 2
    }

    /// Shaves loose regular vertices from cluster `c` and scrapes the
    /// resulting pieces of low internal volume; returns the cores.
    pub fn shave_and_scrape(&mut self, c: &[VertexId]) -> Vec<Vec<VertexId>> {
        let g = self.gbar;
        let mut inside = vec![false; g.vertex_count()];
        for &v in c {
            inside[v] = true;
        }
        // Ḡ-degree into the cluster
        let d_c: Vec<u64> = c
            .iter()
            .map(|&v| g.neighbors(v).filter(|&(u, _)| inside[u]).map(|(_, k)| k).sum())
            .collect();
        let vol_c: u64 = c.iter().map(|&v| g.degree(v)).sum();
        let mut touched = Vec::new();
        let mut kept = Vec::new();
        for (i, &v) in c.iter().enumerate() {
            if g.kind(v) == VertexKind::Regular && 2 * d_c[i] <= g.degree(v) {
                self.log.type4 += self.drop_vertex(v, &mut touched);
            } else {
                kept.push(i);
            }
        }
        let remaining: Vec<VertexId> = kept.iter().map(|&i| c[i]).collect();
        let mut cores = Vec::new();
        for piece in self.components(Some(&remaining)) {
            let ivol: u64 = piece.iter().map(|v| d_c[c.binary_search(v).expect("piece inside cluster")]).sum();
            if 4 * ivol >= vol_c {
                cores.push(piece);
            } else {
                for &v in &piece {
                    self.log.type4 += self.drop_vertex(v, &mut touched);
                }
            }
        }
        cores
    }
}

/// Edges of `g` at supervertices with degree below `threshold`.
fn passive_edges(g: &MultiGraph, threshold: u64) -> u64 {
    let mut total = 0;
    for v in 0..g.vertex_count() {
        for e in g.entries(v) {
            let u = g.target(e);
            let pv = g.kind(v) == VertexKind::Super && g.degree(v) < threshold;
            let pu = g.kind(u) == VertexKind::Super && g.degree(u) < threshold;
            if v < u && (pv || pu) {
                total += g.multiplicity(e);
            }
        }
    }
    total
}

/// One outer iteration: returns the contracted graph.
pub fn outer_iteration(gbar: &MultiGraph, params: KtParams) -> Result<(MultiGraph, IterationLog, Option<IterationTrace>), KtError> {
    let mut st = KtState::new(gbar, params);
    st.remove_passive();
    st.trim(None);
    let mut clusters = Vec::new();
    for comp in st.components(None) {
        clusters.extend(st.middle_loop(comp)?);
    }
    let mut cores = Vec::new();
    for cl in &clusters {
        cores.extend(st.shave_and_scrape(cl));
    }
    st.log.clusters = clusters.len();
    st.log.cores = cores.len();
    st.log.kept_in_cores = st.h_edge_count();
    let l = &st.log;
    debug_assert_eq!(l.type1 + l.type2 + l.type3 + l.type4 + l.kept_in_cores, l.edges);

    let n = gbar.vertex_count();
    let mut labels: Vec<usize> = (0..n).collect();
    for core in &cores {
        for &v in core {
            labels[v] = core[0];
        }
    }
    let (after_cores, _) = gbar.contract_classes(&labels);
    let after = after_cores.contract_heavy_pairs(params.delta);
    let mut log = st.log;
    log.edges_after_cores = after_cores.edge_count();
    log.heavy_merges = after_cores.vertex_count() - after.vertex_count();
    log.vertices_after = after.vertex_count();
    log.edges_after = after.edge_count();
    log.passive_edges_after = passive_edges(&after, params.passive_threshold());
    let trace = st.certificates.map(|certificates| IterationTrace { gbar: gbar.clone(), certificates, clusters, cores });
    Ok((after, log, trace))
}

/// Runs outer iterations on an arbitrary `Ḡ` until the passive-edge test,
/// a stall, or the iteration cap.
pub fn run_framework(mut gbar: MultiGraph, params: KtParams) -> Result<(MultiGraph, EventLog), KtError> {
    let mut iterations = Vec::new();
    let mut traces = Vec::new();
    let mut exit = ExitReason::IterationCap;
    for _ in 0..params.max_iterations {
        let (next, log, trace) = outer_iteration(&gbar, params)?;
        let progress = next.vertex_count() < gbar.vertex_count();
        let passive = log.passive_edges_after;
        iterations.push(log);
        traces.extend(trace.map(IterationTraceSlot));
        gbar = next;
        if gbar.edge_count() == 0 {
            exit = ExitReason::Collapsed;
            break;
        }
        if 20 * passive >= gbar.edge_count() {
            exit = ExitReason::PassiveFraction;
            break;
        }
        if !progress {
            exit = ExitReason::NoProgress;
            break;
        }
    }
    Ok((gbar, EventLog { iterations, exit, traces }))
}

/// Validates a simple connected input and runs the framework on it.
pub fn kt_sparsify(g: &MultiGraph, params: KtParams) -> Result<(MultiGraph, EventLog), KtError> {
    if !g.is_simple() || g.infos().iter().any(|i| i.kind == VertexKind::Super) {
        return Err(KtError::NotSimple);
    }
    if g.vertex_count() < 2 || g.connected_components(None).len() != 1 {
        return Err(KtError::Disconnected);
    }
    let delta = g.min_degree();
    if delta < params.delta_floor() || delta < params.delta {
        return Err(KtError::BelowFloor { delta, floor: params.delta_floor() });
    }
    run_framework(g.clone(), params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::VertexInfo;

    fn clique_edges(base: usize, q: usize) -> Vec<(usize, usize, u64)> {
        let mut e = Vec::new();
        for i in 0..q {
            for j in i + 1..q {
                e.push((base + i, base + j, 1));
            }
        }
        e
    }

    fn params(delta: u64, m: u64) -> KtParams {
        KtParams::desk(delta, m)
    }

    #[test]
    fn trim_is_noop_on_full_graph() {
        let g = MultiGraph::from_edge_list(&clique_edges(0, 5)).unwrap();
        let mut st = KtState::new(&g, params(4, 10));
        assert_eq!(st.trim(None), 0);
    }

    #[test]
    fn star_center_trimmed_with_cascade() {
        // 6-leaf star plus a triangle on leaves 1-2-3 so leaves 1..3 survive
        let mut e: Vec<_> = (1..=6).map(|i| (0, i, 1)).collect();
        e.extend([(1, 2, 1), (2, 3, 1), (1, 3, 1)]);
        let g = MultiGraph::from_edge_list(&e).unwrap();
        let mut st = KtState::new(&g, params(1, 9));
        let mut touched = Vec::new();
        for i in 0..4 {
            let entry = g.entries(0).start + i;
            st.kill_entry(entry, &mut touched);
        }
        st.trim(None);
        assert!(!st.in_h(0));
        assert!((4..=6).all(|v| !st.in_h(v)));
        assert!((1..=3).all(|v| st.in_h(v)));
    }

    #[test]
    fn clique_with_isolated_vertex_loses_only_it() {
        let g = MultiGraph::from_edge_list(&clique_edges(0, 6)).unwrap();
        let mut st = KtState::new(&g, params(5, 15));
        let mut touched = Vec::new();
        for e in g.entries(0) {
            st.kill_entry(e, &mut touched);
        }
        st.trim(None);
        assert!(!st.in_h(0));
        assert!((1..6).all(|v| st.in_h(v)));
    }

    fn with_super(passive_degree: u64) -> MultiGraph {
        // supervertex 0 tied to a 6-clique on 1..=6
        let mut info: Vec<VertexInfo> = (0..7).map(VertexInfo::regular).collect();
        info[0] = VertexInfo { kind: VertexKind::Super, members: vec![0, 7] };
        let mut e = clique_edges(1, 6);
        let per = passive_degree / 3;
        for u in 1..=3 {
            e.push((0, u, per));
        }
        MultiGraph::from_parts(info, &e).unwrap()
    }

    #[test]
    fn passive_removal_threshold_is_strict() {
        let p = KtParams { c1: 3, gamma: 1, delta: 2, ..params(2, 10) };
        // threshold c₁γδ = 6
        let g = with_super(6);
        let mut st = KtState::new(&g, p);
        assert!(st.remove_passive().is_empty());
        let g = with_super(3);
        let mut st = KtState::new(&g, p);
        assert_eq!(st.remove_passive(), vec![0]);
        assert_eq!(st.log.type1, 3);
    }

    #[test]
    fn no_supervertex_means_no_passive() {
        let g = MultiGraph::from_edge_list(&clique_edges(0, 4)).unwrap();
        let mut st = KtState::new(&g, params(3, 6));
        assert!(st.remove_passive().is_empty());
    }

    #[test]
    fn clique_cluster_is_single_core() {
        let g = MultiGraph::from_edge_list(&clique_edges(0, 6)).unwrap();
        let mut st = KtState::new(&g, params(5, 15));
        let all: Vec<_> = (0..6).collect();
        assert_eq!(st.shave_and_scrape(&all), vec![all.clone()]);
    }

    #[test]
    fn half_internal_vertex_is_shaved() {
        // vertex 4 has 2 of its 4 edges into the cluster {0..4}
        let mut e = clique_edges(0, 4);
        e.extend([(4, 0, 1), (4, 1, 1), (4, 5, 1), (4, 6, 1), (5, 6, 1)]);
        let g = MultiGraph::from_edge_list(&e).unwrap();
        let mut st = KtState::new(&g, params(2, 11));
        let cores = st.shave_and_scrape(&[0, 1, 2, 3, 4]);
        assert_eq!(cores, vec![vec![0, 1, 2, 3]]);
        assert!(!st.in_h(4));
    }

    #[test]
    fn tiny_piece_is_scraped() {
        // cluster = K6 on 0..6 plus a heavy pair 6-7 hanging off vertex 8
        let mut e = clique_edges(0, 6);
        e.extend([(6, 7, 3), (6, 8, 1), (7, 8, 1), (8, 0, 1)]);
        let g = MultiGraph::from_edge_list(&e).unwrap();
        let mut st = KtState::new(&g, params(2, 21));
        let cores = st.shave_and_scrape(&[0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(cores, vec![vec![0, 1, 2, 3, 4, 5]]);
        assert!(!st.in_h(6) && !st.in_h(7));
        assert_eq!(st.log.type4, 5);
    }

    #[test]
    fn component_below_s0_is_immediate_cluster() {
        let g = MultiGraph::from_edge_list(&clique_edges(0, 5)).unwrap();
        let p = KtParams { s0: 100, ..params(4, 10) };
        let mut st = KtState::new(&g, p);
        let clusters = st.middle_loop((0..5).collect()).unwrap();
        assert_eq!(clusters, vec![(0..5).collect::<Vec<_>>()]);
        assert_eq!(st.log.inner.total(), 0);
    }

    #[test]
    fn small_graph_is_refused() {
        let g = MultiGraph::from_edge_list(&clique_edges(0, 5)).unwrap();
        let err = kt_sparsify(&g, params(4, 10)).unwrap_err();
        assert_eq!(err, KtError::BelowFloor { delta: 4, floor: 60 });
    }

    #[test]
    fn large_clique_collapses() {
        let g = MultiGraph::from_edge_list(&clique_edges(0, 64)).unwrap();
        let (gbar, log) = kt_sparsify(&g, params(63, g.edge_count())).unwrap();
        assert_eq!(gbar.vertex_count(), 1);
        assert_eq!(log.exit, ExitReason::Collapsed);
        let it = &log.iterations[0];
        assert_eq!(it.type1 + it.type2 + it.type3 + it.type4 + it.kept_in_cores, it.edges);
    }
}

//! Slow reference checkers. Nothing here calls into the flow, scaling or
//! contraction code; they only read a [`MultiGraph`]'s adjacency.

use crate::multigraph::{CutResult, MultiGraph, VertexId, VertexKind};
use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

/// Enumeration limit for conductance search.
pub const MAX_CONDUCTANCE_VERTICES: usize = 22;
/// Enumeration limit for strength and cluster checks.
pub const MAX_CUT_ENUM_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("graph has {n} vertices; enumeration is limited to {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("graph needs at least two vertices")]
    TooSmall,
}

/// Global edge connectivity by unit-capacity augmenting paths.
///
/// Vertex 0 starts a source set `S`. Each remaining vertex `t`, taken in
/// order of most edges into `S`, is either skipped (it already has at least
/// `best` edges into `S`) or separated from `S` by a max-flow capped at
/// `best`; then `t` joins `S`. A cut below `best` never separates `t` from
/// `S` after that check, so the merge loses nothing.
/// Returns the value and a witness side containing vertex 0.
pub fn exact_edge_connectivity(g: &MultiGraph) -> Result<(u64, Vec<VertexId>), OracleError> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(OracleError::TooSmall);
    }
    let mut net = FlowNet::new(g);
    let mut best = u64::MAX;
    let mut witness = Vec::new();
    let mut in_s = vec![false; n];
    let mut adj = vec![0u64; n];
    let mut heap = BinaryHeap::new();
    let join = |v: usize, in_s: &mut [bool], adj: &mut [u64], heap: &mut BinaryHeap<(u64, Reverse<usize>)>| {
        in_s[v] = true;
        for (u, k) in g.neighbors(v) {
            if !in_s[u] {
                adj[u] += k;
                heap.push((adj[u], Reverse(u)));
            }
        }
    };
    join(0, &mut in_s, &mut adj, &mut heap);
    for t in 1..n {
        heap.push((0, Reverse(t)));
    }
    while let Some((a, Reverse(t))) = heap.pop() {
        if in_s[t] || a != adj[t] {
            continue;
        }
        if adj[t] < best {
            let value = net.max_flow(&in_s, t, best);
            if value < best {
                best = value;
                witness = net.source_side(t);
            }
            net.reset();
        }
        join(t, &mut in_s, &mut adj, &mut heap);
    }
    Ok((best, witness))
}

/// Residual network private to the oracle.
struct FlowNet {
    offsets: Vec<usize>,
    head: Vec<usize>,
    cap: Vec<u64>,
    flow: Vec<i64>,
    twin: Vec<usize>,
    touched: Vec<usize>,
    seen: Vec<u32>,
    stamp: u32,
    parent: Vec<usize>,
}

impl FlowNet {
    fn new(g: &MultiGraph) -> Self {
        let n = g.vertex_count();
        let mut offsets = vec![0; n + 1];
        let mut head = Vec::new();
        let mut cap = Vec::new();
        for v in 0..n {
            for (u, k) in g.neighbors(v) {
                head.push(u);
                cap.push(k);
            }
            offsets[v + 1] = head.len();
        }
        // twin lookup by scanning the partner row; rows are sorted by neighbour
        let mut twin = vec![0; head.len()];
        for v in 0..n {
            for a in offsets[v]..offsets[v + 1] {
                let u = head[a];
                let row = &head[offsets[u]..offsets[u + 1]];
                let p = row.iter().position(|&x| x == v).expect("symmetric rows");
                twin[a] = offsets[u] + p;
            }
        }
        let m = head.len();
        FlowNet {
            offsets,
            head,
            cap,
            flow: vec![0; m],
            twin,
            touched: Vec::new(),
            seen: vec![0; n],
            stamp: 0,
            parent: vec![usize::MAX; n],
        }
    }

    fn residual(&self, a: usize) -> u64 {
        (self.cap[a] as i64 - self.flow[a]) as u64
    }

    /// Searches from `t` for a residual path into `S`; returns its endpoint.
    fn bfs(&mut self, in_s: &[bool], t: usize) -> Option<usize> {
        self.stamp += 1;
        let stamp = self.stamp;
        self.seen[t] = stamp;
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            for a in self.offsets[v]..self.offsets[v + 1] {
                let u = self.head[a];
                if self.seen[u] != stamp && self.residual(a) > 0 {
                    self.seen[u] = stamp;
                    self.parent[u] = a;
                    if in_s[u] {
                        return Some(u);
                    }
                    queue.push_back(u);
                }
            }
        }
        None
    }

    /// Max flow from `t` into `S` (equal to the `S`-`t` value), stopping
    /// early once it reaches `limit`.
    fn max_flow(&mut self, in_s: &[bool], t: usize, limit: u64) -> u64 {
        let mut total = 0u64;
        while total < limit {
            let Some(end) = self.bfs(in_s, t) else { break };
            let mut bottleneck = limit - total;
            let mut v = end;
            while v != t {
                let a = self.parent[v];
                bottleneck = bottleneck.min(self.residual(a));
                v = self.head[self.twin[a]];
            }
            let mut v = end;
            while v != t {
                let a = self.parent[v];
                self.flow[a] += bottleneck as i64;
                self.flow[self.twin[a]] -= bottleneck as i64;
                self.touched.push(a);
                self.touched.push(self.twin[a]);
                v = self.head[self.twin[a]];
            }
            total += bottleneck;
        }
        total
    }

    /// Vertices not reachable from `t` in the residual network; contains `S`.
    fn source_side(&mut self, t: usize) -> Vec<VertexId> {
        self.stamp += 1;
        let stamp = self.stamp;
        self.seen[t] = stamp;
        let mut queue = VecDeque::from([t]);
        while let Some(v) = queue.pop_front() {
            for a in self.offsets[v]..self.offsets[v + 1] {
                let u = self.head[a];
                if self.seen[u] != stamp && self.residual(a) > 0 {
                    self.seen[u] = stamp;
                    queue.push_back(u);
                }
            }
        }
        (0..self.seen.len()).filter(|&v| self.seen[v] != stamp).collect()
    }

    fn reset(&mut self) {
        for a in self.touched.drain(..) {
            self.flow[a] = 0;
        }
    }
}

/// Calls `visit(mask, boundary)` for every subset of `0..n-1` (vertex `n-1`
/// always outside), walking a Gray code so each step flips one vertex.
fn for_each_cut(g: &MultiGraph, mut visit: impl FnMut(u64, u64)) {
    let n = g.vertex_count();
    let free = n - 1;
    let mut mask: u64 = 0;
    let mut boundary: u64 = 0;
    for i in 1u64..(1u64 << free) {
        let v = i.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let mut into_side = 0u64;
        for (u, k) in g.neighbors(v) {
            if mask & (1u64 << u) != 0 {
                into_side += k;
            }
        }
        let d = g.degree(v);
        if mask & bit == 0 {
            boundary = boundary + d - 2 * into_side;
            mask |= bit;
        } else {
            boundary = boundary + 2 * into_side - d;
            mask &= !bit;
        }
        visit(mask, boundary);
    }
}

fn mask_to_set(mask: u64, n: usize) -> Vec<VertexId> {
    (0..n).filter(|&v| mask & (1u64 << v) != 0).collect()
}

/// Exact minimum-conductance cut by enumerating all subsets.
pub fn brute_min_conductance(g: &MultiGraph) -> Result<CutResult, OracleError> {
    let n = g.vertex_count();
    if n > MAX_CONDUCTANCE_VERTICES {
        return Err(OracleError::TooLarge { n, limit: MAX_CONDUCTANCE_VERTICES });
    }
    if n < 2 {
        return Err(OracleError::TooSmall);
    }
    let total = 2 * g.edge_count();
    let deg: Vec<u64> = (0..n).map(|v| g.degree(v)).collect();
    let mut best: Option<(u64, u64, u64)> = None; // (boundary, denominator, mask)
    for_each_cut(g, |mask, boundary| {
        let vol: u64 = (0..n).filter(|&v| mask & (1 << v) != 0).map(|v| deg[v]).sum();
        let den = vol.min(total - vol);
        if den == 0 {
            return;
        }
        let better = match best {
            None => true,
            Some((b, d, _)) => (boundary as u128) * (d as u128) < (b as u128) * (den as u128),
        };
        if better {
            best = Some((boundary, den, mask));
        }
    });
    let (boundary, _, mask) = best.ok_or(OracleError::TooSmall)?;
    let side = mask_to_set(mask, n);
    let vol_side: u64 = side.iter().map(|&v| deg[v]).sum();
    Ok(CutResult { side, boundary, vol_side, vol_rest: total - vol_side })
}

/// Edge connectivity by enumerating every cut; used to cross-check
/// [`exact_edge_connectivity`].
pub fn brute_edge_connectivity(g: &MultiGraph) -> Result<u64, OracleError> {
    let n = g.vertex_count();
    if n > MAX_CONDUCTANCE_VERTICES {
        return Err(OracleError::TooLarge { n, limit: MAX_CONDUCTANCE_VERTICES });
    }
    if n < 2 {
        return Err(OracleError::TooSmall);
    }
    let mut best = u64::MAX;
    for_each_cut(g, |_, b| best = best.min(b));
    Ok(best)
}

/// All minimum cuts whose sides both hold at least two original vertices
/// (counting supervertex members), as the side not containing the last
/// vertex. Returns the non-trivial minimum value too.
pub fn nontrivial_min_cuts(g: &MultiGraph) -> Result<(u64, Vec<Vec<VertexId>>), OracleError> {
    let n = g.vertex_count();
    if n > MAX_CUT_ENUM_VERTICES {
        return Err(OracleError::TooLarge { n, limit: MAX_CUT_ENUM_VERTICES });
    }
    let weight: Vec<usize> = (0..n).map(|v| g.members(v).len()).collect();
    let total: usize = weight.iter().sum();
    let mut best = u64::MAX;
    let mut found: Vec<u64> = Vec::new();
    for_each_cut(g, |mask, b| {
        let size: usize = (0..n).filter(|&v| mask & (1 << v) != 0).map(|v| weight[v]).sum();
        if size < 2 || total - size < 2 {
            return;
        }
        if b < best {
            best = b;
            found.clear();
        }
        if b == best {
            found.push(mask);
        }
    });
    Ok((best, found.into_iter().map(|m| mask_to_set(m, n)).collect()))
}

/// One failed pre-flow condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PreflowViolation {
    Antisymmetry { entry: usize },
    Capacity { entry: usize, flow: i64, limit: u64 },
    SupplyMismatch { vertex: VertexId, expected: i64, claimed: u64 },
    NegativeSupply { vertex: VertexId, value: i64 },
    Conservation { total: u64, source: u64 },
    Shape,
}

impl fmt::Display for PreflowViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreflowViolation::Antisymmetry { entry } => write!(f, "f(v,u) != -f(u,v) at entry {entry}"),
            PreflowViolation::Capacity { entry, flow, limit } => {
                write!(f, "entry {entry} carries {flow}, limit {limit}")
            }
            PreflowViolation::SupplyMismatch { vertex, expected, claimed } => {
                write!(f, "vertex {vertex}: recomputed supply {expected}, claimed {claimed}")
            }
            PreflowViolation::NegativeSupply { vertex, value } => write!(f, "vertex {vertex}: supply {value} < 0"),
            PreflowViolation::Conservation { total, source } => {
                write!(f, "total supply {total} differs from source total {source}")
            }
            PreflowViolation::Shape => write!(f, "input lengths do not match the graph"),
        }
    }
}

/// Checks a pre-flow given per-entry aggregated arc flows (summed over the
/// parallel slots of a pair). `cap_per_edge` is the per-slot capacity, so an
/// entry of multiplicity `k` may carry at most `k * cap_per_edge`.
pub fn verify_preflow(
    g: &MultiGraph,
    source: &[u64],
    cap_per_edge: u64,
    flow: &[i64],
    claimed: &[u64],
) -> Result<(), Vec<PreflowViolation>> {
    let n = g.vertex_count();
    if source.len() != n || claimed.len() != n || flow.len() != g.entry_count() {
        return Err(vec![PreflowViolation::Shape]);
    }
    let mut bad = Vec::new();
    for v in 0..n {
        let mut incoming: i64 = 0;
        for e in g.entries(v) {
            let r = g.reverse(e);
            if flow[e] != -flow[r] {
                bad.push(PreflowViolation::Antisymmetry { entry: e });
            }
            let limit = cap_per_edge * g.multiplicity(e);
            if flow[e].unsigned_abs() > limit {
                bad.push(PreflowViolation::Capacity { entry: e, flow: flow[e], limit });
            }
            incoming += flow[r];
        }
        let expected = source[v] as i64 + incoming;
        if expected < 0 {
            bad.push(PreflowViolation::NegativeSupply { vertex: v, value: expected });
        }
        if expected != claimed[v] as i64 {
            bad.push(PreflowViolation::SupplyMismatch { vertex: v, expected, claimed: claimed[v] });
        }
    }
    let total: u64 = claimed.iter().sum();
    let src: u64 = source.iter().sum();
    if total != src {
        bad.push(PreflowViolation::Conservation { total, source: src });
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// Definitional strength check, with volumes measured in `Ḡ[C]`.
pub fn verify_strong(gbar: &MultiGraph, c: &[VertexId], s: u64, delta: u64, s0: u64) -> Result<bool, OracleError> {
    let inside: Vec<bool> = membership(gbar.vertex_count(), c);
    let deg: Vec<u64> = c
        .iter()
        .map(|&v| gbar.neighbors(v).filter(|&(u, _)| inside[u]).map(|(_, k)| k).sum())
        .collect();
    verify_strong_with_degrees(gbar, c, &deg, s, delta, s0)
}

/// Strength check with caller-supplied component degrees `c_deg[i]` for
/// `c[i]` (e.g. degrees in a subgraph `H` of `Ḡ`). Every cut of `Ḡ` with at
/// most `delta` crossing edges must have `min(vol_C(S∩C), vol_C(C\S)) <= s`
/// whenever that minimum is at least `s0`.
pub fn verify_strong_with_degrees(
    gbar: &MultiGraph,
    c: &[VertexId],
    c_deg: &[u64],
    s: u64,
    delta: u64,
    s0: u64,
) -> Result<bool, OracleError> {
    let n = gbar.vertex_count();
    if n > MAX_CUT_ENUM_VERTICES {
        return Err(OracleError::TooLarge { n, limit: MAX_CUT_ENUM_VERTICES });
    }
    if n < 2 {
        return Ok(true);
    }
    let mut weight = vec![0u64; n];
    for (i, &v) in c.iter().enumerate() {
        weight[v] = c_deg[i];
    }
    let total: u64 = weight.iter().sum();
    let mut ok = true;
    for_each_cut(gbar, |mask, b| {
        if !ok || b > delta {
            return;
        }
        let a: u64 = (0..n).filter(|&v| mask & (1 << v) != 0).map(|v| weight[v]).sum();
        let x = a.min(total - a);
        if x >= s0 && x > s {
            ok = false;
        }
    });
    Ok(ok)
}

/// Definitional cluster check: every cut of `Ḡ` with at most `delta`
/// crossing edges leaves, on one side, no supervertex of `C` and at most two
/// of its regular vertices.
pub fn verify_cluster(gbar: &MultiGraph, c: &[VertexId], delta: u64) -> Result<bool, OracleError> {
    let n = gbar.vertex_count();
    if n > MAX_CUT_ENUM_VERTICES {
        return Err(OracleError::TooLarge { n, limit: MAX_CUT_ENUM_VERTICES });
    }
    if n < 2 {
        return Ok(true);
    }
    let mut regular: u64 = 0;
    let mut superv: u64 = 0;
    for &v in c {
        match gbar.kind(v) {
            VertexKind::Regular => regular |= 1 << v,
            VertexKind::Super => superv |= 1 << v,
        }
    }
    let all = (1u64 << n) - 1;
    let small = |mask: u64| (mask & superv) == 0 && (mask & regular).count_ones() <= 2;
    let mut ok = true;
    for_each_cut(gbar, |mask, b| {
        if ok && b <= delta && !small(mask) && !small(all & !mask) {
            ok = false;
        }
    });
    Ok(ok)
}

fn membership(n: usize, set: &[VertexId]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

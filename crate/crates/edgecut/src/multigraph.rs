//! Undirected multigraph with regular vertices and supervertices.
//!
//! Adjacency is stored in compressed rows. Every undirected pair `{v, u}` owns
//! one entry in each endpoint's row; [`MultiGraph::reverse`] links the two.
//! Rows are sorted by neighbour id, which fixes every iteration order used by
//! the flow routines.

use crate::scalar::{ratio, Scalar};
use crate::ExactConductance;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::ops::Range;

/// Dense vertex index.
pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Regular,
    Super,
}

/// What a vertex stands for in the original graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexInfo {
    pub kind: VertexKind,
    /// Original vertex ids, sorted.
    pub members: Vec<VertexId>,
}

impl VertexInfo {
    pub fn regular(v: VertexId) -> Self {
        VertexInfo { kind: VertexKind::Regular, members: vec![v] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("entry {index}: self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: VertexId },
    #[error("entry {index}: multiplicity must be positive")]
    ZeroMultiplicity { index: usize },
    #[error("entry {index}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, vertex: VertexId, n: usize },
    #[error("trivial partition: side must be a nonempty proper subset of the vertices")]
    TrivialPartition,
    #[error("vertex {vertex} out of range for {n} vertices")]
    UnknownVertex { vertex: VertexId, n: usize },
}

/// Statistics of the cut `(side, V \ side)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutResult {
    /// Sorted vertex ids of the side.
    pub side: Vec<VertexId>,
    /// Crossing edges counted with multiplicity.
    pub boundary: u64,
    pub vol_side: u64,
    pub vol_rest: u64,
}

impl CutResult {
    pub fn min_volume(&self) -> u64 {
        self.vol_side.min(self.vol_rest)
    }

    /// `boundary / min(vol_side, vol_rest)`; zero when both are zero.
    pub fn conductance<T: Scalar>(&self) -> T {
        let den = self.min_volume();
        if den == 0 {
            return T::zero();
        }
        ratio(self.boundary, den)
    }

    pub fn phi(&self) -> f64 {
        self.conductance::<f64>()
    }

    pub fn exact_conductance(&self) -> ExactConductance {
        self.conductance::<ExactConductance>()
    }

    /// True when the side carries no more volume than the rest.
    pub fn side_is_smaller(&self) -> bool {
        self.vol_side <= self.vol_rest
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    mults: Vec<u64>,
    rev: Vec<usize>,
    degrees: Vec<u64>,
    info: Vec<VertexInfo>,
    edges: u64,
}

impl MultiGraph {
    /// Builds a graph of `max id + 1` regular vertices.
    pub fn from_edge_list(edges: &[(VertexId, VertexId, u64)]) -> Result<Self, GraphError> {
        let n = edges.iter().map(|&(u, v, _)| u.max(v) + 1).max().unwrap_or(0);
        Self::with_vertex_count(n, edges)
    }

    /// Builds a graph of exactly `n` regular vertices; ids must be below `n`.
    pub fn with_vertex_count(n: usize, edges: &[(VertexId, VertexId, u64)]) -> Result<Self, GraphError> {
        let info = (0..n).map(VertexInfo::regular).collect();
        Self::from_parts(info, edges)
    }

    /// Builds a graph with explicit vertex descriptions.
    pub fn from_parts(info: Vec<VertexInfo>, edges: &[(VertexId, VertexId, u64)]) -> Result<Self, GraphError> {
        let n = info.len();
        let mut arcs: Vec<(VertexId, VertexId, u64)> = Vec::with_capacity(edges.len() * 2);
        for (index, &(u, v, k)) in edges.iter().enumerate() {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { index, vertex: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { index, vertex: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { index, vertex: u });
            }
            if k == 0 {
                return Err(GraphError::ZeroMultiplicity { index });
            }
            arcs.push((u, v, k));
            arcs.push((v, u, k));
        }
        arcs.sort_unstable_by_key(|&(a, b, _)| (a, b));
        let mut offsets = vec![0usize; n + 1];
        let mut targets = Vec::with_capacity(arcs.len());
        let mut mults: Vec<u64> = Vec::with_capacity(arcs.len());
        let mut sources = Vec::with_capacity(arcs.len());
        for (a, b, k) in arcs {
            if sources.last() == Some(&a) && targets.last() == Some(&b) {
                *mults.last_mut().unwrap() += k;
            } else {
                sources.push(a);
                targets.push(b);
                mults.push(k);
            }
        }
        for &a in &sources {
            offsets[a + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut degrees = vec![0u64; n];
        for (e, &a) in sources.iter().enumerate() {
            degrees[a] += mults[e];
        }
        let mut rev = vec![0usize; targets.len()];
        for (e, &a) in sources.iter().enumerate() {
            let b = targets[e];
            let row = &targets[offsets[b]..offsets[b + 1]];
            let pos = row.binary_search(&a).expect("adjacency is symmetric");
            rev[e] = offsets[b] + pos;
        }
        let edges = degrees.iter().sum::<u64>() / 2;
        let g = MultiGraph { offsets, targets, mults, rev, degrees, info, edges };
        debug_assert_eq!(g.check_invariants(), Ok(()));
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.info.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.edges
    }

    /// Number of adjacency entries (twice the number of distinct pairs).
    pub fn entry_count(&self) -> usize {
        self.targets.len()
    }

    pub fn degree(&self, v: VertexId) -> u64 {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn volume<I: IntoIterator<Item = VertexId>>(&self, set: I) -> u64 {
        set.into_iter().map(|v| self.degrees[v]).sum()
    }

    pub fn min_degree(&self) -> u64 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn info(&self, v: VertexId) -> &VertexInfo {
        &self.info[v]
    }

    pub fn infos(&self) -> &[VertexInfo] {
        &self.info
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.info[v].kind
    }

    pub fn members(&self, v: VertexId) -> &[VertexId] {
        &self.info[v].members
    }

    /// Count of original vertices represented.
    pub fn original_vertex_count(&self) -> usize {
        self.info.iter().map(|i| i.members.len()).sum()
    }

    /// True if every multiplicity is 1 and every vertex is regular.
    pub fn is_simple(&self) -> bool {
        self.mults.iter().all(|&k| k == 1) && self.info.iter().all(|i| i.kind == VertexKind::Regular)
    }

    /// Entry range of `v`'s row.
    pub fn entries(&self, v: VertexId) -> Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    pub fn target(&self, e: usize) -> VertexId {
        self.targets[e]
    }

    pub fn multiplicity(&self, e: usize) -> u64 {
        self.mults[e]
    }

    /// The entry for the same pair in the other endpoint's row.
    pub fn reverse(&self, e: usize) -> usize {
        self.rev[e]
    }

    /// Per-entry multiplicities, usable as an all-alive mask.
    pub fn multiplicities(&self) -> &[u64] {
        &self.mults
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, u64)> + '_ {
        self.entries(v).map(move |e| (self.targets[e], self.mults[e]))
    }

    pub fn multiplicity_between(&self, u: VertexId, v: VertexId) -> u64 {
        let row = &self.targets[self.entries(u)];
        match row.binary_search(&v) {
            Ok(p) => self.mults[self.offsets[u] + p],
            Err(_) => 0,
        }
    }

    /// Each undirected pair once as `(u, v, k)` with `u < v`, sorted.
    pub fn edge_list(&self) -> Vec<(VertexId, VertexId, u64)> {
        let mut out = Vec::with_capacity(self.targets.len() / 2);
        for v in 0..self.vertex_count() {
            for e in self.entries(v) {
                let u = self.targets[e];
                if v < u {
                    out.push((v, u, self.mults[e]));
                }
            }
        }
        out
    }

    /// Verifies symmetry, loop-freeness, degree sums and the member partition.
    pub fn check_invariants(&self) -> Result<(), String> {
        let n = self.vertex_count();
        let mut total = 0u64;
        for v in 0..n {
            let mut d = 0;
            for e in self.entries(v) {
                let u = self.targets[e];
                if u == v {
                    return Err(format!("self-loop at {v}"));
                }
                let r = self.rev[e];
                if self.targets[r] != v || self.mults[r] != self.mults[e] {
                    return Err(format!("asymmetric pair {v}-{u}"));
                }
                d += self.mults[e];
            }
            if d != self.degrees[v] {
                return Err(format!("degree cache wrong at {v}"));
            }
            total += d;
        }
        if total != 2 * self.edges {
            return Err("degree sum differs from 2m".into());
        }
        let mut seen = std::collections::HashSet::new();
        for i in &self.info {
            if i.members.is_empty() {
                return Err("vertex without members".into());
            }
            for &x in &i.members {
                if !seen.insert(x) {
                    return Err(format!("original vertex {x} in two member sets"));
                }
            }
        }
        Ok(())
    }

    fn membership(&self, side: &[VertexId]) -> Result<(Vec<bool>, Vec<VertexId>), GraphError> {
        let n = self.vertex_count();
        let mut inside = vec![false; n];
        let mut sorted = Vec::with_capacity(side.len());
        for &v in side {
            if v >= n {
                return Err(GraphError::UnknownVertex { vertex: v, n });
            }
            if !inside[v] {
                inside[v] = true;
                sorted.push(v);
            }
        }
        sorted.sort_unstable();
        Ok((inside, sorted))
    }

    /// Boundary, volumes and conductance of `(side, V \ side)` by direct count.
    pub fn cut_stats(&self, side: &[VertexId]) -> Result<CutResult, GraphError> {
        let (inside, sorted) = self.membership(side)?;
        if sorted.is_empty() || sorted.len() == self.vertex_count() {
            return Err(GraphError::TrivialPartition);
        }
        let mut boundary = 0;
        let mut vol_side = 0;
        for &v in &sorted {
            vol_side += self.degrees[v];
            for e in self.entries(v) {
                if !inside[self.targets[e]] {
                    boundary += self.mults[e];
                }
            }
        }
        Ok(CutResult { side: sorted, boundary, vol_side, vol_rest: 2 * self.edges - vol_side })
    }

    /// Connected components under an optional per-entry alive multiplicity
    /// mask; components are sorted and listed by smallest vertex.
    pub fn connected_components(&self, alive: Option<&[u64]>) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            stack.push(s);
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for e in self.entries(v) {
                    let live = alive.map_or(self.mults[e], |a| a[e]);
                    let u = self.targets[e];
                    if live > 0 && comp[u] == usize::MAX {
                        comp[u] = id;
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Merges every class of `labels` (vertices sharing a label) into one
    /// vertex. New ids follow the smallest old id of each class; the returned
    /// map sends old ids to new ids.
    pub fn contract_classes(&self, labels: &[usize]) -> (MultiGraph, Vec<VertexId>) {
        let n = self.vertex_count();
        assert_eq!(labels.len(), n, "one label per vertex");
        let mut label_to_new: HashMap<usize, VertexId> = HashMap::new();
        let mut map = vec![0; n];
        let mut info: Vec<VertexInfo> = Vec::new();
        let mut sizes: Vec<usize> = Vec::new();
        for v in 0..n {
            let next = info.len();
            let id = *label_to_new.entry(labels[v]).or_insert(next);
            if id == next {
                info.push(VertexInfo { kind: self.info[v].kind, members: Vec::new() });
                sizes.push(0);
            }
            map[v] = id;
            sizes[id] += 1;
            info[id].members.extend_from_slice(&self.info[v].members);
            if self.info[v].kind == VertexKind::Super {
                info[id].kind = VertexKind::Super;
            }
        }
        for (i, vi) in info.iter_mut().enumerate() {
            if sizes[i] > 1 {
                vi.kind = VertexKind::Super;
            }
            vi.members.sort_unstable();
        }
        let mut edges = Vec::new();
        for v in 0..n {
            for e in self.entries(v) {
                let u = self.targets[e];
                if v < u && map[v] != map[u] {
                    edges.push((map[v], map[u], self.mults[e]));
                }
            }
        }
        let g = MultiGraph::from_parts(info, &edges).expect("contraction keeps a valid graph");
        (g, map)
    }

    /// Replaces `set` by one supervertex.
    pub fn contract_set(&self, set: &[VertexId]) -> MultiGraph {
        self.contract_set_with_map(set).0
    }

    pub fn contract_set_with_map(&self, set: &[VertexId]) -> (MultiGraph, Vec<VertexId>) {
        assert!(!set.is_empty(), "contract_set needs a nonempty set");
        let rep = *set.iter().min().unwrap();
        let mut labels: Vec<usize> = (0..self.vertex_count()).collect();
        for &v in set {
            labels[v] = rep;
        }
        self.contract_classes(&labels)
    }

    /// Repeatedly merges pairs joined by more than `delta` parallel edges
    /// until none is left.
    pub fn contract_heavy_pairs(&self, delta: u64) -> MultiGraph {
        self.contract_heavy_pairs_with_map(delta).0
    }

    pub fn contract_heavy_pairs_with_map(&self, delta: u64) -> (MultiGraph, Vec<VertexId>) {
        assert!(delta >= 1, "delta must be positive");
        let mut g = self.clone();
        let mut total: Vec<VertexId> = (0..self.vertex_count()).collect();
        loop {
            let mut dsu = Dsu::new(g.vertex_count());
            let mut any = false;
            for v in 0..g.vertex_count() {
                for e in g.entries(v) {
                    let u = g.targets[e];
                    if v < u && g.mults[e] > delta {
                        dsu.union(v, u);
                        any = true;
                    }
                }
            }
            if !any {
                return (g, total);
            }
            let labels: Vec<usize> = (0..g.vertex_count()).map(|v| dsu.find(v)).collect();
            let (next, map) = g.contract_classes(&labels);
            for t in total.iter_mut() {
                *t = map[*t];
            }
            g = next;
        }
    }

    /// Subgraph induced on `vertices` (local id = position in the slice),
    /// with multiplicities taken from `alive` when given. Returns the graph
    /// and the local-to-global map.
    pub fn induced(&self, vertices: &[VertexId], alive: Option<&[u64]>) -> (MultiGraph, Vec<VertexId>) {
        let local_of = LocalIndex::new(self.vertex_count(), vertices);
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for e in self.entries(v) {
                let u = self.targets[e];
                if v >= u {
                    continue;
                }
                let k = alive.map_or(self.mults[e], |a| a[e]);
                if k == 0 {
                    continue;
                }
                if let Some(j) = local_of.get(u) {
                    edges.push((i, j, k));
                }
            }
        }
        let info = vertices.iter().map(|&v| self.info[v].clone()).collect();
        let g = MultiGraph::from_parts(info, &edges).expect("induced subgraph is valid");
        (g, vertices.to_vec())
    }
}

/// Global-to-local id lookup that avoids an `n`-sized table for small sets.
pub(crate) enum LocalIndex {
    Dense(Vec<usize>),
    Sparse(HashMap<VertexId, usize>),
}

impl LocalIndex {
    pub(crate) fn new(n: usize, vertices: &[VertexId]) -> Self {
        if vertices.len() * 16 >= n {
            let mut t = vec![usize::MAX; n];
            for (i, &v) in vertices.iter().enumerate() {
                t[v] = i;
            }
            LocalIndex::Dense(t)
        } else {
            LocalIndex::Sparse(vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect())
        }
    }

    pub(crate) fn get(&self, v: VertexId) -> Option<usize> {
        match self {
            LocalIndex::Dense(t) => (t[v] != usize::MAX).then_some(t[v]),
            LocalIndex::Sparse(h) => h.get(&v).copied(),
        }
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn clique(base: usize, q: usize) -> Vec<(usize, usize, u64)> {
        let mut e = Vec::new();
        for i in 0..q {
            for j in i + 1..q {
                e.push((base + i, base + j, 1));
            }
        }
        e
    }

    fn barbell() -> MultiGraph {
        let mut e = clique(0, 5);
        e.extend(clique(5, 5));
        e.push((4, 5, 1));
        MultiGraph::from_edge_list(&e).unwrap()
    }

    #[test]
    fn triangle_from_edges() {
        let g = MultiGraph::from_edge_list(&[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert!(g.is_simple());
    }

    #[test]
    fn duplicate_entries_sum() {
        let g = MultiGraph::from_edge_list(&[(0, 1, 2), (0, 1, 3)]).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.multiplicity_between(1, 0), 5);
        assert!(!g.is_simple());
    }

    #[test]
    fn rejects_loops_and_zero() {
        assert_eq!(
            MultiGraph::from_edge_list(&[(0, 0, 1)]),
            Err(GraphError::SelfLoop { index: 0, vertex: 0 })
        );
        assert_eq!(
            MultiGraph::from_edge_list(&[(0, 1, 1), (1, 2, 0)]),
            Err(GraphError::ZeroMultiplicity { index: 1 })
        );
    }

    #[test]
    fn cut_stats_examples() {
        let c4 = MultiGraph::from_edge_list(&[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]).unwrap();
        let c = c4.cut_stats(&[0, 1]).unwrap();
        assert_eq!((c.boundary, c.vol_side, c.vol_rest), (2, 4, 4));
        assert_eq!(c.exact_conductance(), Ratio::new(1, 2));

        let k4 = MultiGraph::from_edge_list(&clique(0, 4)).unwrap();
        let c = k4.cut_stats(&[0]).unwrap();
        assert_eq!(c.boundary, 3);
        assert_eq!(c.exact_conductance(), Ratio::new(1, 1));

        let c = barbell().cut_stats(&[0, 1, 2, 3, 4]).unwrap();
        assert_eq!((c.boundary, c.vol_side), (1, 21));
        assert_eq!(c.exact_conductance(), Ratio::new(1, 21));
    }

    #[test]
    fn cut_stats_rejects_trivial() {
        let g = barbell();
        assert_eq!(g.cut_stats(&[]), Err(GraphError::TrivialPartition));
        let all: Vec<usize> = (0..10).collect();
        assert_eq!(g.cut_stats(&all), Err(GraphError::TrivialPartition));
    }

    #[test]
    fn components_with_and_without_mask() {
        let tri = MultiGraph::from_edge_list(&[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        assert_eq!(tri.connected_components(None), vec![vec![0, 1, 2]]);
        let two = MultiGraph::from_edge_list(&[(0, 1, 1), (2, 3, 1)]).unwrap();
        assert_eq!(two.connected_components(None).len(), 2);

        let g = barbell();
        let mut alive = g.multiplicities().to_vec();
        let e = g.entries(4).find(|&e| g.target(e) == 5).unwrap();
        alive[e] = 0;
        alive[g.reverse(e)] = 0;
        assert_eq!(
            g.connected_components(Some(&alive)),
            vec![vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]]
        );
    }

    #[test]
    fn contract_set_examples() {
        let tri = MultiGraph::from_edge_list(&[(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap();
        let c = tri.contract_set(&[0, 1]);
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.multiplicity_between(0, 1), 2);
        assert_eq!(c.kind(0), VertexKind::Super);
        assert_eq!(c.members(0), &[0, 1]);

        let path = MultiGraph::from_edge_list(&[(0, 1, 1), (1, 2, 1)]).unwrap();
        let (c, map) = path.contract_set_with_map(&[0, 2]);
        assert_eq!(map, vec![0, 1, 0]);
        assert_eq!(c.multiplicity_between(0, 1), 2);

        let g = barbell();
        let c = g.contract_set(&[0, 1, 2, 3, 4]);
        assert_eq!(c.edge_count(), g.edge_count() - 10);
        assert_eq!(c.vertex_count(), 6);
        c.check_invariants().unwrap();
    }

    #[test]
    fn heavy_pairs() {
        let g = MultiGraph::from_edge_list(&[(0, 1, 5)]).unwrap();
        let c = g.contract_heavy_pairs(4);
        assert_eq!((c.vertex_count(), c.edge_count()), (1, 0));

        let g = MultiGraph::from_edge_list(&[(0, 1, 4)]).unwrap();
        assert_eq!(g.contract_heavy_pairs(4), g);

        let info = (0..3).map(|i| VertexInfo { kind: VertexKind::Super, members: vec![2 * i, 2 * i + 1] }).collect();
        let g = MultiGraph::from_parts(info, &[(0, 1, 6), (1, 2, 6), (0, 2, 6)]).unwrap();
        let c = g.contract_heavy_pairs(5);
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.members(0), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn heavy_pairs_cascade() {
        // 0-1 heavy; after merging, {0,1}-2 becomes 3+3 = 6 > 5.
        let g = MultiGraph::from_edge_list(&[(0, 1, 6), (0, 2, 3), (1, 2, 3), (2, 3, 1)]).unwrap();
        let c = g.contract_heavy_pairs(5);
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 1);
    }

    #[test]
    fn induced_with_mask() {
        let g = barbell();
        let (h, map) = g.induced(&[3, 4, 5], None);
        assert_eq!(map, vec![3, 4, 5]);
        assert_eq!(h.edge_count(), 2);
        h.check_invariants().unwrap();
    }

    fn arb_graph() -> impl Strategy<Value = MultiGraph> {
        (2usize..9).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n, 1u64..4), 1..20).prop_map(move |raw| {
                let edges: Vec<_> = raw.into_iter().filter(|&(a, b, _)| a != b).collect();
                MultiGraph::with_vertex_count(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn boundary_symmetric(g in arb_graph(), mask in prop::collection::vec(any::<bool>(), 9)) {
            let n = g.vertex_count();
            let side: Vec<usize> = (0..n).filter(|&v| mask[v]).collect();
            let rest: Vec<usize> = (0..n).filter(|&v| !mask[v]).collect();
            prop_assume!(!side.is_empty() && !rest.is_empty());
            let a = g.cut_stats(&side).unwrap();
            let b = g.cut_stats(&rest).unwrap();
            prop_assert_eq!(a.boundary, b.boundary);
            prop_assert_eq!(a.vol_side, b.vol_rest);
        }

        #[test]
        fn contraction_preserves_cuts_not_splitting_set(
            g in arb_graph(),
            mask in prop::collection::vec(any::<bool>(), 9),
            pick in prop::collection::vec(any::<bool>(), 9),
        ) {
            let n = g.vertex_count();
            let set: Vec<usize> = (0..n).filter(|&v| pick[v]).collect();
            prop_assume!(!set.is_empty());
            let (c, map) = g.contract_set_with_map(&set);
            c.check_invariants().unwrap();
            prop_assert_eq!(c.original_vertex_count(), n);
            // put the whole set on the side of its first member
            let side_of_set = mask[set[0]];
            let side: Vec<usize> = (0..n)
                .filter(|&v| if pick[v] { side_of_set } else { mask[v] })
                .collect();
            prop_assume!(!side.is_empty() && side.len() < n);
            let mut image: Vec<usize> = side.iter().map(|&v| map[v]).collect();
            image.sort_unstable();
            image.dedup();
            prop_assume!(image.len() < c.vertex_count());
            prop_assert_eq!(g.cut_stats(&side).unwrap().boundary, c.cut_stats(&image).unwrap().boundary);
        }

        #[test]
        fn heavy_contraction_fixed_point(g in arb_graph(), delta in 1u64..4) {
            let c = g.contract_heavy_pairs(delta);
            c.check_invariants().unwrap();
            prop_assert!(c.multiplicities().iter().all(|&k| k <= delta));
            prop_assert_eq!(c.original_vertex_count(), g.vertex_count());
        }
    }
}

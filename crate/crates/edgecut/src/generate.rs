//! Seeded graph generators.

use crate::multigraph::{GraphError, MultiGraph, VertexId, VertexInfo, VertexKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GraphSpec {
    Cycle { n: usize },
    Clique { n: usize },
    Barbell { q: usize, b: usize },
    Grid { rows: usize, cols: usize },
    Planted { n: usize, d_in: usize, b: usize },
    Random { n: usize, p: f64 },
}

impl GraphSpec {
    pub fn generate(&self, seed: u64) -> Result<MultiGraph, GenError> {
        match *self {
            GraphSpec::Cycle { n } => cycle(n),
            GraphSpec::Clique { n } => clique(n),
            GraphSpec::Barbell { q, b } => barbell(q, b),
            GraphSpec::Grid { rows, cols } => grid(rows, cols),
            GraphSpec::Planted { n, d_in, b } => planted(n, d_in, b, seed),
            GraphSpec::Random { n, p } => random_connected(n, p, seed),
        }
    }
}

type Edges = Vec<(VertexId, VertexId, u64)>;

fn build(n: usize, edges: &Edges) -> Result<MultiGraph, GenError> {
    Ok(MultiGraph::with_vertex_count(n, edges)?)
}

pub fn cycle(n: usize) -> Result<MultiGraph, GenError> {
    if n < 3 {
        return Err(GenError::Params("cycle needs n >= 3".into()));
    }
    build(n, &(0..n).map(|i| (i, (i + 1) % n, 1)).collect())
}

fn clique_edges(base: usize, q: usize, out: &mut Edges) {
    for i in 0..q {
        for j in i + 1..q {
            out.push((base + i, base + j, 1));
        }
    }
}

pub fn clique(n: usize) -> Result<MultiGraph, GenError> {
    if n < 2 {
        return Err(GenError::Params("clique needs n >= 2".into()));
    }
    let mut e = Vec::new();
    clique_edges(0, n, &mut e);
    build(n, &e)
}

/// Two copies of `K_q` joined by `b` vertex-disjoint bridges `(i, q+i)`.
pub fn barbell(q: usize, b: usize) -> Result<MultiGraph, GenError> {
    if q < 2 || b == 0 || b > q {
        return Err(GenError::Params(format!("barbell needs q >= 2 and 1 <= b <= q, got q={q} b={b}")));
    }
    let mut e = Vec::new();
    clique_edges(0, q, &mut e);
    clique_edges(q, q, &mut e);
    e.extend((0..b).map(|i| (i, q + i, 1)));
    build(2 * q, &e)
}

pub fn grid(rows: usize, cols: usize) -> Result<MultiGraph, GenError> {
    if rows == 0 || cols == 0 || rows * cols < 2 {
        return Err(GenError::Params("grid needs at least two cells".into()));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                e.push((id(r, c), id(r, c + 1), 1));
            }
            if r + 1 < rows {
                e.push((id(r, c), id(r + 1, c), 1));
            }
        }
    }
    build(rows * cols, &e)
}

/// Shuffled circulant on `ids`: each vertex joined to the next `d/2` in a
/// random ring order, plus the antipodal vertex when `d` is odd.
fn near_regular(ids: &[VertexId], d: usize, rng: &mut ChaCha8Rng, out: &mut Edges) {
    let k = ids.len();
    let mut ring = ids.to_vec();
    ring.shuffle(rng);
    for i in 0..k {
        for j in 1..=d / 2 {
            out.push((ring[i], ring[(i + j) % k], 1));
        }
    }
    if d % 2 == 1 {
        for i in 0..k / 2 {
            out.push((ring[i], ring[i + k / 2], 1));
        }
    }
}

/// Two seeded near-regular blocks of internal degree `d_in`, joined by `b`
/// distinct random cross edges.
pub fn planted(n: usize, d_in: usize, b: usize, seed: u64) -> Result<MultiGraph, GenError> {
    let half = n / 2;
    let rest = n - half;
    if half < 2 || d_in < 2 || d_in >= half {
        return Err(GenError::Params(format!("planted needs 2 <= d_in < n/2, got n={n} d_in={d_in}")));
    }
    if d_in % 2 == 1 && (half % 2 == 1 || rest % 2 == 1) {
        return Err(GenError::Params("odd d_in needs even block sizes".into()));
    }
    if b == 0 || b > half * rest {
        return Err(GenError::Params(format!("b must be in 1..={}", half * rest)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut e = Vec::new();
    let left: Vec<_> = (0..half).collect();
    let right: Vec<_> = (half..n).collect();
    near_regular(&left, d_in, &mut rng, &mut e);
    near_regular(&right, d_in, &mut rng, &mut e);
    let mut cross = BTreeSet::new();
    while cross.len() < b {
        cross.insert((rng.gen_range(0..half), rng.gen_range(half..n)));
    }
    e.extend(cross.into_iter().map(|(u, v)| (u, v, 1)));
    build(n, &e)
}

/// `G(n, p)` plus a random spanning tree, so the result is connected.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<MultiGraph, GenError> {
    if n < 2 || !(0.0..=1.0).contains(&p) {
        return Err(GenError::Params("random needs n >= 2 and p in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        set.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                set.insert((u, v));
            }
        }
    }
    build(n, &set.into_iter().map(|(u, v)| (u, v, 1)).collect())
}

/// A small graph shaped like a partly contracted one: two halves, each a
/// clique of regular vertices plus supervertices, joined by `b` unit edges.
/// Regular pairs are simple, every pair has multiplicity at most `delta`,
/// regular vertices have degree at least `delta`, and each supervertex has
/// degree at least `super_degree`.
pub fn contracted_instance(
    n: usize,
    supers_per_half: usize,
    delta: u64,
    super_degree: u64,
    b: usize,
    seed: u64,
) -> Result<MultiGraph, GenError> {
    let half = n / 2;
    if supers_per_half == 0 || half <= supers_per_half || n > 64 || delta == 0 {
        return Err(GenError::Params("need 0 < supers_per_half < n/2 and n <= 64".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mult = BTreeMap::<(VertexId, VertexId), u64>::new();
    let mut kind = vec![VertexKind::Regular; n];
    let halves = [(0..half).collect::<Vec<_>>(), (half..n).collect::<Vec<_>>()];
    for part in &halves {
        let (supers, regs) = part.split_at(supers_per_half);
        for &v in supers {
            kind[v] = VertexKind::Super;
        }
        for (i, &u) in regs.iter().enumerate() {
            for &v in &regs[i + 1..] {
                mult.insert((u, v), 1);
            }
        }
        // regular degree: clique neighbours plus edges to supervertices
        let need = delta.saturating_sub(regs.len() as u64 - 1);
        let room = delta * supers.len() as u64;
        if need > room {
            return Err(GenError::Params(format!("regular vertices need {need} edges to supervertices, room for {room}")));
        }
        for &u in regs {
            let mut left = (need + rng.gen_range(0..=delta / 4)).min(room);
            let mut i = rng.gen_range(0..supers.len());
            while left > 0 {
                let v = supers[i % supers.len()];
                let have = mult.entry((v.min(u), v.max(u))).or_insert(0);
                let add = rng.gen_range(1..=left).min(delta - *have);
                *have += add;
                left -= add;
                i += 1;
            }
        }
        for (i, &u) in supers.iter().enumerate() {
            for &v in &supers[i + 1..] {
                mult.insert((u, v), rng.gen_range(delta / 2..=delta).max(1));
            }
        }
        // top up supervertices below the requested degree
        for &u in supers {
            let deg = |m: &BTreeMap<(VertexId, VertexId), u64>| -> u64 {
                m.iter().filter(|(&(a, c), _)| a == u || c == u).map(|(_, &k)| k).sum()
            };
            let mut guard = 0;
            while deg(&mult) < super_degree && guard < 4 * n {
                let v = part[rng.gen_range(0..part.len())];
                if v != u {
                    let have = mult.entry((u.min(v), u.max(v))).or_insert(0);
                    *have = (*have + delta / 4 + 1).min(delta);
                }
                guard += 1;
            }
        }
    }
    let mut cross = BTreeSet::new();
    while cross.len() < b.min(half * (n - half)) {
        cross.insert((rng.gen_range(0..half), rng.gen_range(half..n)));
    }
    for (u, v) in cross {
        let have = mult.entry((u, v)).or_insert(0);
        *have = (*have + 1).min(delta);
    }
    let mut next = n;
    let info = (0..n)
        .map(|v| match kind[v] {
            VertexKind::Regular => VertexInfo::regular(v),
            VertexKind::Super => {
                let extra = rng.gen_range(1..=3);
                let mut members = vec![v];
                members.extend(next..next + extra);
                next += extra;
                VertexInfo { kind: VertexKind::Super, members }
            }
        })
        .collect();
    let edges: Vec<_> = mult.into_iter().map(|((u, v), k)| (u, v, k)).collect();
    Ok(MultiGraph::from_parts(info, &edges)?)
}

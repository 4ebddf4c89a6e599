//! Edge-list, DIMACS, and supply file formats.

use crate::multigraph::{GraphError, MultiGraph, VertexId};
use crate::supply::{OriginId, SourceFunction};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "edgelist" | "el" => Ok(Format::EdgeList),
            "dimacs" => Ok(Format::Dimacs),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

impl Format {
    /// `.dimacs`, `.col` and `.gr` files are DIMACS, everything else an edge list.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some("dimacs" | "col" | "gr") => Format::Dimacs,
            _ => Format::EdgeList,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: VertexId },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse { line, msg: msg.into() }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, IoError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} {tok:?}")))
}

/// Accumulates edges so repeated pairs add up.
#[derive(Default)]
struct EdgeAcc {
    edges: BTreeMap<(VertexId, VertexId), u64>,
}

impl EdgeAcc {
    fn add(&mut self, u: VertexId, v: VertexId, k: u64, line: usize) -> Result<(), IoError> {
        if u == v {
            return Err(IoError::SelfLoop { line, vertex: u });
        }
        if k == 0 {
            return Err(parse_err(line, "multiplicity must be positive"));
        }
        *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += k;
        Ok(())
    }

    fn build(self, n: usize) -> Result<MultiGraph, IoError> {
        let list: Vec<_> = self.edges.into_iter().map(|((u, v), k)| (u, v, k)).collect();
        Ok(MultiGraph::with_vertex_count(n, &list)?)
    }
}

/// `u v [mult]` per line, 0-based, `#` comments. A leading `# vertices N`
/// comment fixes the vertex count; otherwise it is one past the largest id.
pub fn parse_edgelist(text: &str) -> Result<MultiGraph, IoError> {
    let mut acc = EdgeAcc::default();
    let mut declared: Option<usize> = None;
    let mut n = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            let mut toks = comment.split_whitespace();
            if toks.next() == Some("vertices") {
                declared = Some(field(toks.next(), line, "vertex count")?);
            }
            continue;
        }
        let body = trimmed.split('#').next().unwrap_or("");
        let mut toks = body.split_whitespace();
        let Some(first) = toks.next() else { continue };
        let u: VertexId = field(Some(first), line, "vertex")?;
        let v: VertexId = field(toks.next(), line, "vertex")?;
        let k: u64 = match toks.next() {
            Some(t) => field(Some(t), line, "multiplicity")?,
            None => 1,
        };
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
        acc.add(u, v, k, line)?;
        n = n.max(u + 1).max(v + 1);
    }
    if let Some(d) = declared {
        if d < n {
            return Err(parse_err(0, format!("declared {d} vertices but saw id {}", n - 1)));
        }
        n = d;
    }
    acc.build(n)
}

/// `p edge n m` header and `e u v` lines with 1-based ids. Repeated lines
/// become multiplicities.
pub fn parse_dimacs(text: &str) -> Result<MultiGraph, IoError> {
    let mut acc = EdgeAcc::default();
    let mut n: Option<usize> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(parse_err(line, "duplicate problem line"));
                }
                let kind: String = field(toks.next(), line, "problem kind")?;
                if kind != "edge" && kind != "col" {
                    return Err(parse_err(line, format!("unsupported problem kind {kind:?}")));
                }
                n = Some(field(toks.next(), line, "vertex count")?);
                let _m: u64 = field(toks.next(), line, "edge count")?;
            }
            Some("e") => {
                let nn = n.ok_or_else(|| parse_err(line, "edge before problem line"))?;
                let u: usize = field(toks.next(), line, "vertex")?;
                let v: usize = field(toks.next(), line, "vertex")?;
                if u == 0 || v == 0 || u > nn || v > nn {
                    return Err(parse_err(line, format!("vertex out of range 1..={nn}")));
                }
                acc.add(u - 1, v - 1, 1, line)?;
            }
            Some(other) => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing problem line"))?;
    acc.build(n)
}

pub fn parse_graph(path: &Path, format: Format) -> Result<MultiGraph, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.display().to_string(), source })?;
    match format {
        Format::EdgeList => parse_edgelist(&text),
        Format::Dimacs => parse_dimacs(&text),
    }
}

pub fn write_edgelist(g: &MultiGraph) -> String {
    let mut out = format!("# vertices {}\n", g.vertex_count());
    for (u, v, k) in g.edge_list() {
        if k == 1 {
            let _ = writeln!(out, "{u} {v}");
        } else {
            let _ = writeln!(out, "{u} {v} {k}");
        }
    }
    out
}

pub fn write_dimacs(g: &MultiGraph) -> String {
    let mut out = format!("p edge {} {}\n", g.vertex_count(), g.edge_count());
    for (u, v, k) in g.edge_list() {
        for _ in 0..k {
            let _ = writeln!(out, "e {} {}", u + 1, v + 1);
        }
    }
    out
}

pub fn write_graph(g: &MultiGraph, format: Format) -> String {
    match format {
        Format::EdgeList => write_edgelist(g),
        Format::Dimacs => write_dimacs(g),
    }
}

/// Supply file: `v units [origin]` per line, origin defaulting to `v`.
pub fn parse_supply(text: &str, n: usize) -> Result<SourceFunction, IoError> {
    let mut s = SourceFunction::new(n);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut toks = body.split_whitespace();
        let Some(first) = toks.next() else { continue };
        let v: VertexId = field(Some(first), line, "vertex")?;
        if v >= n {
            return Err(parse_err(line, format!("vertex {v} out of range")));
        }
        let units: u64 = field(toks.next(), line, "units")?;
        let origin: OriginId = match toks.next() {
            Some(t) => field(Some(t), line, "origin")?,
            None => OriginId::try_from(v).map_err(|_| parse_err(line, "vertex id too large for an origin"))?,
        };
        s.add(v, origin, units);
    }
    Ok(s)
}

pub fn write_supply(s: &SourceFunction) -> String {
    let mut out = String::new();
    for v in 0..s.vertex_count() {
        for &(o, u) in s.ledger(v).entries() {
            let _ = writeln!(out, "{v} {u} {o}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgelist_path() {
        let g = parse_edgelist("0 1\n1 2\n").unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 2));
    }

    #[test]
    fn dimacs_path() {
        let g = parse_dimacs("c hi\np edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g, parse_edgelist("0 1\n1 2\n").unwrap());
    }

    #[test]
    fn self_loop_reports_line() {
        let err = parse_edgelist("0 0").unwrap_err();
        assert!(matches!(err, IoError::SelfLoop { line: 1, vertex: 0 }));
    }

    #[test]
    fn malformed_line_number() {
        let err = parse_edgelist("0 1\n# c\n1 x\n").unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 3, .. }), "{err}");
    }

    #[test]
    fn round_trips_keep_ids_and_multiplicities() {
        let g = MultiGraph::with_vertex_count(5, &[(0, 1, 3), (1, 2, 1), (0, 3, 2)]).unwrap();
        assert_eq!(parse_edgelist(&write_edgelist(&g)).unwrap(), g);
        assert_eq!(parse_dimacs(&write_dimacs(&g)).unwrap(), g);
    }

    #[test]
    fn supply_default_origin() {
        let s = parse_supply("2 5\n0 1 7\n", 3).unwrap();
        assert_eq!(s.ledger(2).entries(), &[(2, 5)]);
        assert_eq!(s.ledger(0).entries(), &[(7, 1)]);
        assert_eq!(parse_supply(&write_supply(&s), 3).unwrap(), s);
    }
}

//! Oracle audit of a traced contraction run on a small instance.

use crate::kt_framework::{CertKind, EventLog, KtParams};
use crate::multigraph::{MultiGraph, VertexId};
use crate::oracles::{nontrivial_min_cuts, verify_cluster, verify_strong_with_degrees, OracleError};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub strength_certificates: usize,
    pub strength_violations: Vec<String>,
    pub clusters: usize,
    pub cluster_violations: Vec<String>,
    pub cores: usize,
    /// Non-trivial minimum cuts of the input with value at most `δ`.
    pub min_cuts_checked: usize,
    pub core_violations: Vec<String>,
}

impl AuditReport {
    pub fn violations(&self) -> usize {
        self.strength_violations.len() + self.cluster_violations.len() + self.core_violations.len()
    }
}

fn expand(g: &MultiGraph, set: &[VertexId]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = set.iter().flat_map(|&v| g.members(v).iter().copied()).collect();
    out.sort_unstable();
    out
}

/// Checks every strength certificate and cluster of every traced iteration,
/// and every contracted core against the input's non-trivial minimum cuts.
/// `log` must come from a run with `params.trace` set.
pub fn audit_run(input: &MultiGraph, log: &EventLog, params: &KtParams) -> Result<AuditReport, OracleError> {
    let mut rep = AuditReport::default();
    let (value, sides) = nontrivial_min_cuts(input)?;
    let cuts: Vec<Vec<VertexId>> = if value <= params.delta {
        sides.iter().map(|s| expand(input, s)).collect()
    } else {
        Vec::new()
    };
    rep.min_cuts_checked = cuts.len();
    for (i, slot) in log.traces.iter().enumerate() {
        let t = &slot.0;
        for c in &t.certificates {
            if c.kind == CertKind::Cluster {
                continue;
            }
            rep.strength_certificates += 1;
            if !verify_strong_with_degrees(&t.gbar, &c.vertices, &c.degrees, c.strength, params.delta, params.s0)? {
                rep.strength_violations.push(format!("iteration {i}: {:?} {:?} s={}", c.kind, c.vertices, c.strength));
            }
        }
        for c in &t.clusters {
            rep.clusters += 1;
            if !verify_cluster(&t.gbar, c, params.delta)? {
                rep.cluster_violations.push(format!("iteration {i}: cluster {c:?}"));
            }
        }
        for core in &t.cores {
            rep.cores += 1;
            let a = expand(&t.gbar, core);
            for s in &cuts {
                let inside = a.iter().filter(|v| s.binary_search(v).is_ok()).count();
                if inside != 0 && inside != a.len() {
                    rep.core_violations.push(format!("iteration {i}: core {a:?} splits min cut side {s:?}"));
                }
            }
        }
    }
    Ok(rep)
}

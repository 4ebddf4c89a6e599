//! Operation-count scaling tables on planted graphs.

use edgecut::generate::planted;
use edgecut::kt_framework::Profile;
use edgecut::mincut_pipeline::{min_cut, Mode, PathTaken};
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Internal degree of the planted blocks; clears the desk floor of 60.
pub const BENCH_DEGREE: usize = 60;
pub const BENCH_CROSS_EDGES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Small,
    Medium,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "small" => Ok(Suite::Small),
            "medium" => Ok(Suite::Medium),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

impl Suite {
    /// Exponents `k` of the target edge counts `m = 2^k`.
    pub fn exponents(self) -> std::ops::RangeInclusive<u32> {
        match self {
            Suite::Small => 12..=16,
            Suite::Medium => 12..=20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub k: u32,
    pub n: usize,
    pub m: u64,
    pub lambda: u64,
    pub sparsified: bool,
    pub pushes: u64,
    pub relabels: u64,
    pub relabel_work: u64,
    pub units_moved: u64,
    pub work: u64,
    pub inner_calls: u64,
    pub iterations: usize,
    pub gbar_vertices: usize,
    pub gbar_edges: u64,
    #[serde(skip)]
    pub millis: f64,
}

/// Planted instance with roughly `2^k` edges.
pub fn bench_instance_size(k: u32) -> usize {
    ((1usize << (k + 1)) / BENCH_DEGREE + 3) & !3
}

pub fn run_instance(k: u32) -> Result<BenchRow, String> {
    let n = bench_instance_size(k);
    let g = planted(n, BENCH_DEGREE, BENCH_CROSS_EDGES, u64::from(k)).map_err(|e| e.to_string())?;
    let t = Instant::now();
    let ans = min_cut(&g, Profile::Desk, Mode::Auto).map_err(|e| e.to_string())?;
    let millis = t.elapsed().as_secs_f64() * 1e3;
    let s = &ans.stats;
    Ok(BenchRow {
        k,
        n,
        m: g.edge_count(),
        lambda: ans.value,
        sparsified: ans.path_taken == PathTaken::Sparsified,
        pushes: s.flow.pushes,
        relabels: s.flow.relabels,
        relabel_work: s.flow.relabel_work,
        units_moved: s.flow.units_moved,
        work: s.flow.work(),
        inner_calls: s.inner_calls.total(),
        iterations: s.iterations,
        gbar_vertices: s.gbar_vertices,
        gbar_edges: s.gbar_edges,
        millis,
    })
}

pub fn run_suite(suite: Suite) -> Result<Vec<BenchRow>, String> {
    suite.exponents().map(run_instance).collect()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

pub fn work_exponent(rows: &[BenchRow]) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.m as f64, r.work.max(1) as f64)).collect();
    log_log_slope(&pts)
}

pub fn to_csv(rows: &[BenchRow], timings: bool) -> String {
    let mut out = String::from(
        "k,n,m,lambda,sparsified,pushes,relabels,relabel_work,units_moved,work,inner_calls,iterations,gbar_vertices,gbar_edges",
    );
    if timings {
        out.push_str(",millis");
    }
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.k,
            r.n,
            r.m,
            r.lambda,
            r.sparsified,
            r.pushes,
            r.relabels,
            r.relabel_work,
            r.units_moved,
            r.work,
            r.inner_calls,
            r.iterations,
            r.gbar_vertices,
            r.gbar_edges
        ));
        if timings {
            out.push_str(&format!(",{:.1}", r.millis));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<_> = (1..6).map(|i| (f64::from(i), f64::from(i).powf(1.5) * 3.0)).collect();
        assert!((log_log_slope(&pts) - 1.5).abs() < 1e-9);
    }

    #[test]
    fn instance_sizes_hit_target() {
        for k in 12..=20 {
            let n = bench_instance_size(k);
            let m = n * BENCH_DEGREE / 2;
            assert!((m as f64 / f64::from(1u32 << k) - 1.0).abs() < 0.05, "k={k} m={m}");
        }
    }
}

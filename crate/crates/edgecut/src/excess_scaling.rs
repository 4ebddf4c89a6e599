//! Geometric unit scaling on top of [`crate::unit_flow`].
//!
//! Supply is routed in phases with unit value `μ`, halving `μ` between
//! phases and dropping excess after each. A run stops early once a phase
//! returns a level cut that is large relative to `μ`.
//!
//! Unit formation at a vertex with raw ledger `r`: each origin contributes
//! `⌊r_o/μ⌋` whole units; the leftovers are packed in ascending origin order
//! into composite units of exactly `μ` (synthetic origin ids above every
//! real one); what remains (`< μ`) waits in a residue ledger for the next
//! phase. Composite ids sort last, so they move last and are discarded first.

use crate::multigraph::{CutResult, MultiGraph, VertexId};
use crate::scalar::lnln_floor1;
use crate::supply::{Ledger, OriginId, SourceFunction};
use crate::unit_flow::{self, FlowCase, FlowCounters, FlowError, FlowParams, SweepMode};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingParams {
    /// Tolerated discarded fraction `τ`, in `(0, 1)`.
    pub tau: f64,
    /// Per-slot capacity `U` handed to each phase, in units.
    pub capacity: u64,
    pub height: u32,
    /// Width used by every phase.
    pub width: u64,
    pub mode: SweepMode,
}

impl ScalingParams {
    pub fn new(tau: f64, capacity: u64, height: u32) -> Self {
        ScalingParams { tau, capacity, height, width: 3, mode: SweepMode::Coarse }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScalingError {
    #[error("tau = {0} is not in (0, 1)")]
    TauOutOfRange(f64),
    #[error("vertex {0} has supply but degree 0")]
    IsolatedSupply(VertexId),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("supply accounting broke in phase {phase}: {detail}")]
    Accounting { phase: u32, detail: String },
    #[error("scaling run already finished")]
    Finished,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ScalingCase {
    Routed,
    /// `K`, the smaller side of the triggering level cut.
    Cut(CutResult),
}

#[derive(Debug, Clone)]
pub struct ScalingOutcome {
    pub case: ScalingCase,
    /// Raw supply held at each vertex, never discarded; its total is `|Δ′|`.
    pub routed: SourceFunction,
    /// Sub-unit supply not yet routed (always empty in the routed case).
    pub residue: SourceFunction,
    pub discarded: BTreeMap<OriginId, u64>,
    /// Raw supply discarded at each vertex.
    pub discarded_at: Vec<u64>,
    pub initial_total: u64,
    /// Initial `F`, and `μ` of the last phase run (`F` if none ran).
    pub scale: u64,
    pub final_unit: u64,
    pub phases: u32,
    /// Signed cumulative raw flow per parallel slot.
    pub slot_flow: Vec<i64>,
    slot_base: Vec<usize>,
    pub counters: FlowCounters,
    /// Phases whose fine sweep failed and were re-swept coarsely.
    pub sweep_fallbacks: u32,
}

impl ScalingOutcome {
    /// `Δ′` per origin.
    pub fn routed_per_origin(&self) -> BTreeMap<OriginId, u64> {
        self.routed.per_origin()
    }

    pub fn routed_total(&self) -> u64 {
        self.routed.total()
    }

    pub fn discarded_total(&self) -> u64 {
        self.discarded.values().sum()
    }

    pub fn residue_total(&self) -> u64 {
        self.residue.total()
    }

    /// Cumulative flow summed over the parallel slots of each entry.
    pub fn entry_flows(&self) -> Vec<i64> {
        (0..self.slot_base.len() - 1)
            .map(|e| self.slot_flow[self.slot_base[e]..self.slot_base[e + 1]].iter().sum())
            .collect()
    }

    pub fn max_slot_flow(&self) -> u64 {
        self.slot_flow.iter().map(|f| f.unsigned_abs()).max().unwrap_or(0)
    }

    /// Supply each vertex ends up accountable for: held, waiting, or
    /// dropped there.
    pub fn final_supply(&self) -> Vec<u64> {
        (0..self.discarded_at.len())
            .map(|v| self.routed.vertex_total(v) + self.residue.vertex_total(v) + self.discarded_at[v])
            .collect()
    }
}

/// `Δ′` as a source function over origins, for origins that are vertex ids.
pub fn routed_per_origin(outcome: &ScalingOutcome) -> SourceFunction {
    let per = outcome.routed_per_origin();
    let n = per.keys().next_back().map_or(0, |&o| o as usize + 1).max(outcome.discarded_at.len());
    let mut s = SourceFunction::new(n);
    for (o, u) in per {
        s.add(o as usize, o, u);
    }
    s
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepStatus {
    Continue,
    Done,
}

/// A resumable run; each [`ScalingRun::step`] executes one phase.
#[derive(Debug, Clone)]
pub struct ScalingRun<'g> {
    g: &'g MultiGraph,
    params: ScalingParams,
    origin_count: OriginId,
    raw: Vec<Ledger>,
    residue: Vec<Ledger>,
    discarded: BTreeMap<OriginId, u64>,
    discarded_at: Vec<u64>,
    initial_total: u64,
    scale: u64,
    mu: u64,
    phases: u32,
    slot_base: Vec<usize>,
    slot_flow: Vec<i64>,
    counters: FlowCounters,
    sweep_fallbacks: u32,
    result: Option<ScalingCase>,
}

impl<'g> ScalingRun<'g> {
    pub fn new(g: &'g MultiGraph, delta: &SourceFunction, params: ScalingParams) -> Result<Self, ScalingError> {
        if !(params.tau > 0.0 && params.tau < 1.0) {
            return Err(ScalingError::TauOutOfRange(params.tau));
        }
        let n = g.vertex_count();
        if delta.vertex_count() != n {
            return Err(FlowError::ShapeMismatch { got: delta.vertex_count(), want: n }.into());
        }
        if params.width < 2 {
            return Err(FlowError::WidthTooSmall(params.width).into());
        }
        if params.capacity == 0 {
            return Err(FlowError::ZeroCapacity.into());
        }
        let mut scale = 1u64;
        for v in 0..n {
            let s = delta.vertex_total(v);
            let d = g.degree(v);
            if s > 0 && d == 0 {
                return Err(ScalingError::IsolatedSupply(v));
            }
            while s > 2 * d * scale {
                scale *= 2;
            }
        }
        let origin_count = delta
            .ledgers()
            .iter()
            .filter_map(|l| l.entries().last().map(|&(o, _)| o + 1))
            .max()
            .unwrap_or(0);
        let mut slot_base = Vec::with_capacity(g.entry_count() + 1);
        let mut acc = 0;
        for e in 0..g.entry_count() {
            slot_base.push(acc);
            acc += g.multiplicity(e) as usize;
        }
        slot_base.push(acc);
        let trivially_routed = (0..n).all(|v| delta.vertex_total(v) <= g.degree(v));
        if !trivially_routed {
            if g.edge_count() == 0 {
                return Err(FlowError::NoEdges.into());
            }
            let need = (g.edge_count() as f64).ln();
            if params.height == 0 || (params.height as f64) < need {
                return Err(FlowError::HeightTooSmall { h: params.height, need }.into());
            }
        }
        Ok(ScalingRun {
            g,
            params,
            origin_count,
            raw: delta.ledgers().to_vec(),
            residue: vec![Ledger::new(); n],
            discarded: BTreeMap::new(),
            discarded_at: vec![0; n],
            initial_total: delta.total(),
            scale,
            mu: scale,
            phases: 0,
            slot_base,
            slot_flow: vec![0; acc],
            counters: FlowCounters::default(),
            sweep_fallbacks: 0,
            result: trivially_routed.then_some(ScalingCase::Routed),
        })
    }

    pub fn is_done(&self) -> bool {
        self.result.is_some()
    }

    /// The early-exit cut, once the run has stopped on one.
    pub fn cut(&self) -> Option<&CutResult> {
        match &self.result {
            Some(ScalingCase::Cut(k)) => Some(k),
            _ => None,
        }
    }

    pub fn unit(&self) -> u64 {
        self.mu
    }

    pub fn phases(&self) -> u32 {
        self.phases
    }

    pub fn counters(&self) -> &FlowCounters {
        &self.counters
    }

    /// Splits each vertex's raw supply into `μ`-units and residue.
    fn form_units(&mut self) -> (SourceFunction, Vec<Vec<(OriginId, u64)>>) {
        let mu = self.mu;
        let mut composites: Vec<Vec<(OriginId, u64)>> = Vec::new();
        let mut units = Vec::with_capacity(self.raw.len());
        for (raw, residue) in self.raw.iter_mut().zip(self.residue.iter_mut()) {
            let mut l = Ledger::new();
            let mut open: Vec<(OriginId, u64)> = Vec::new();
            let mut open_amount = 0u64;
            for &(o, r) in raw.entries() {
                l.add(o, r / mu);
                let mut left = r % mu;
                while left > 0 {
                    let t = left.min(mu - open_amount);
                    open.push((o, t));
                    open_amount += t;
                    left -= t;
                    if open_amount == mu {
                        l.add(self.origin_count + composites.len() as OriginId, 1);
                        composites.push(std::mem::take(&mut open));
                        open_amount = 0;
                    }
                }
            }
            *raw = Ledger::new();
            debug_assert!(residue.is_empty());
            for (o, t) in open {
                residue.add(o, t);
            }
            units.push(l);
        }
        (SourceFunction::from_ledgers(units), composites)
    }

    /// Runs one phase.
    pub fn step(&mut self) -> Result<StepStatus, ScalingError> {
        if self.result.is_some() {
            return Err(ScalingError::Finished);
        }
        let g = self.g;
        let mu = self.mu;
        let (units, composites) = self.form_units();
        let fp = FlowParams { capacity: self.params.capacity, height: self.params.height, width: self.params.width };
        let state = unit_flow::push_relabel(g, &units, fp)?;
        let case = match unit_flow::classify(g, &state, self.params.mode) {
            Err(FlowError::SweepFailed { .. }) if self.params.mode != SweepMode::Coarse => {
                self.sweep_fallbacks += 1;
                unit_flow::classify(g, &state, SweepMode::Coarse)?
            }
            other => other?,
        };
        self.counters.absorb(&state.counters);
        self.phases += 1;

        for e in 0..g.entry_count() {
            let base = self.slot_base[e];
            for (i, &f) in state.slot_flows(e).iter().enumerate() {
                self.slot_flow[base + i] += f * mu as i64;
            }
        }

        let origin_count = self.origin_count;
        let credit = |o: OriginId, k: u64, sink: &mut dyn FnMut(OriginId, u64)| {
            if o < origin_count {
                sink(o, k * mu);
            } else {
                for &(orig, r) in &composites[(o - origin_count) as usize] {
                    sink(orig, r * k);
                }
            }
        };
        for (v, mut held) in state.into_ledgers().into_iter().enumerate() {
            let d = g.degree(v);
            let total = held.total();
            if total > d {
                let mut dropped = Vec::new();
                held.take_descending(total - d, |o, k| dropped.push((o, k)));
                for (o, k) in dropped {
                    credit(o, k, &mut |orig, r| *self.discarded.entry(orig).or_insert(0) += r);
                }
                self.discarded_at[v] += (total - d) * mu;
            }
            let raw = &mut self.raw[v];
            for &(o, k) in held.entries() {
                credit(o, k, &mut |orig, r| raw.add(orig, r));
            }
        }
        self.check_accounting()?;

        if let FlowCase::Cut(sc) = case {
            let threshold = self.params.tau * self.initial_total as f64
                / (10.0 * mu as f64 * (2.0 * mu as f64).ln() * lnln_floor1(g.edge_count() as f64));
            if sc.cut.vol_side as f64 >= threshold {
                let k = if sc.cut.side_is_smaller() { sc.cut } else { complement(g, &sc.cut) };
                self.result = Some(ScalingCase::Cut(k));
                return Ok(StepStatus::Done);
            }
        }
        let fits = (0..g.vertex_count()).all(|v| self.raw[v].total() + self.residue[v].total() <= g.degree(v));
        if fits {
            for (raw, res) in self.raw.iter_mut().zip(self.residue.iter_mut()) {
                raw.merge(res);
                *res = Ledger::new();
            }
            self.result = Some(ScalingCase::Routed);
            return Ok(StepStatus::Done);
        }
        if mu == 1 {
            return Err(ScalingError::Accounting { phase: self.phases, detail: "supply above degree at unit 1".into() });
        }
        self.mu /= 2;
        for (raw, res) in self.raw.iter_mut().zip(self.residue.iter_mut()) {
            raw.merge(res);
            *res = Ledger::new();
        }
        Ok(StepStatus::Continue)
    }

    fn check_accounting(&self) -> Result<(), ScalingError> {
        let held: u64 = self.raw.iter().map(Ledger::total).sum();
        let waiting: u64 = self.residue.iter().map(Ledger::total).sum();
        let dropped: u64 = self.discarded.values().sum();
        if held + waiting + dropped != self.initial_total {
            return Err(ScalingError::Accounting {
                phase: self.phases,
                detail: format!("{held} + {waiting} + {dropped} != {}", self.initial_total),
            });
        }
        let bound = self.params.capacity as u128 * (2 * self.scale as u128 - 1);
        if self.slot_flow.iter().any(|f| f.unsigned_abs() as u128 > bound) {
            return Err(ScalingError::Accounting { phase: self.phases, detail: "slot flow above U(2F-1)".into() });
        }
        Ok(())
    }

    /// Consumes a finished run. Panics if the run has not finished.
    pub fn finish(self) -> ScalingOutcome {
        let case = self.result.expect("scaling run not finished");
        ScalingOutcome {
            case,
            routed: SourceFunction::from_ledgers(self.raw),
            residue: SourceFunction::from_ledgers(self.residue),
            discarded: self.discarded,
            discarded_at: self.discarded_at,
            initial_total: self.initial_total,
            scale: self.scale,
            final_unit: self.mu,
            phases: self.phases,
            slot_flow: self.slot_flow,
            slot_base: self.slot_base,
            counters: self.counters,
            sweep_fallbacks: self.sweep_fallbacks,
        }
    }
}

fn complement(g: &MultiGraph, cut: &CutResult) -> CutResult {
    let mut inside = vec![false; g.vertex_count()];
    for &v in &cut.side {
        inside[v] = true;
    }
    CutResult {
        side: (0..g.vertex_count()).filter(|&v| !inside[v]).collect(),
        boundary: cut.boundary,
        vol_side: cut.vol_rest,
        vol_rest: cut.vol_side,
    }
}

/// Runs all phases to completion.
pub fn excess_scaling(g: &MultiGraph, delta: &SourceFunction, params: ScalingParams) -> Result<ScalingOutcome, ScalingError> {
    let mut run = ScalingRun::new(g, delta, params)?;
    while !run.is_done() {
        run.step()?;
    }
    Ok(run.finish())
}

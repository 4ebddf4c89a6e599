//! Per-vertex supply with origin provenance.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Identifier carried by every unit of supply (a vertex id or bundle index).
pub type OriginId = u32;

/// Units held at one vertex, split by origin. Entries are sorted by origin
/// and never zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    entries: Vec<(OriginId, u64)>,
}

impl Ledger {
    pub fn new() -> Self {
        Ledger::default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, u)| u).sum()
    }

    pub fn entries(&self) -> &[(OriginId, u64)] {
        &self.entries
    }

    pub fn get(&self, origin: OriginId) -> u64 {
        match self.entries.binary_search_by_key(&origin, |&(o, _)| o) {
            Ok(p) => self.entries[p].1,
            Err(_) => 0,
        }
    }

    pub fn add(&mut self, origin: OriginId, units: u64) {
        if units == 0 {
            return;
        }
        match self.entries.binary_search_by_key(&origin, |&(o, _)| o) {
            Ok(p) => self.entries[p].1 += units,
            Err(p) => self.entries.insert(p, (origin, units)),
        }
    }

    /// Removes `units` of one origin; panics if not held.
    pub fn remove(&mut self, origin: OriginId, units: u64) {
        if units == 0 {
            return;
        }
        let p = self
            .entries
            .binary_search_by_key(&origin, |&(o, _)| o)
            .expect("origin present in ledger");
        assert!(self.entries[p].1 >= units, "ledger underflow");
        self.entries[p].1 -= units;
        if self.entries[p].1 == 0 {
            self.entries.remove(p);
        }
    }

    pub fn merge(&mut self, other: &Ledger) {
        for &(o, u) in &other.entries {
            self.add(o, u);
        }
    }

    /// Takes `amount` units starting from the smallest origin id.
    pub fn take_ascending(&mut self, amount: u64, mut sink: impl FnMut(OriginId, u64)) {
        let mut left = amount;
        let mut drained = 0;
        for entry in self.entries.iter_mut() {
            if left == 0 {
                break;
            }
            let t = entry.1.min(left);
            sink(entry.0, t);
            entry.1 -= t;
            left -= t;
            if entry.1 == 0 {
                drained += 1;
            }
        }
        assert_eq!(left, 0, "ledger underflow");
        self.entries.drain(..drained);
    }

    /// Takes `amount` units starting from the largest origin id.
    pub fn take_descending(&mut self, amount: u64, mut sink: impl FnMut(OriginId, u64)) {
        let mut left = amount;
        while left > 0 {
            let last = self.entries.last_mut().expect("ledger underflow");
            let t = last.1.min(left);
            sink(last.0, t);
            last.1 -= t;
            left -= t;
            if last.1 == 0 {
                self.entries.pop();
            }
        }
    }

    /// Splits into the first `cap` units in ascending origin order and the rest.
    pub fn split_ascending(&self, cap: u64) -> (Ledger, Ledger) {
        let mut low = Ledger::new();
        let mut high = Ledger::new();
        let mut left = cap;
        for &(o, u) in &self.entries {
            let t = u.min(left);
            left -= t;
            low.add(o, t);
            high.add(o, u - t);
        }
        (low, high)
    }

    /// Keeps only origins accepted by `keep`.
    pub fn retain(&mut self, mut keep: impl FnMut(OriginId) -> bool) {
        self.entries.retain(|&(o, _)| keep(o));
    }
}

/// A source function `Δ`: per-vertex ledgers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceFunction {
    ledgers: Vec<Ledger>,
}

impl SourceFunction {
    /// All-zero supply on `n` vertices.
    pub fn new(n: usize) -> Self {
        SourceFunction { ledgers: vec![Ledger::new(); n] }
    }

    /// Supply `amounts[v]` at each vertex with origin `v`.
    pub fn from_totals(amounts: &[u64]) -> Self {
        let mut s = SourceFunction::new(amounts.len());
        for (v, &a) in amounts.iter().enumerate() {
            s.add(v, v as OriginId, a);
        }
        s
    }

    pub fn from_ledgers(ledgers: Vec<Ledger>) -> Self {
        SourceFunction { ledgers }
    }

    pub fn vertex_count(&self) -> usize {
        self.ledgers.len()
    }

    pub fn add(&mut self, v: usize, origin: OriginId, units: u64) {
        self.ledgers[v].add(origin, units);
    }

    pub fn ledger(&self, v: usize) -> &Ledger {
        &self.ledgers[v]
    }

    pub fn ledgers(&self) -> &[Ledger] {
        &self.ledgers
    }

    pub fn into_ledgers(self) -> Vec<Ledger> {
        self.ledgers
    }

    pub fn vertex_total(&self, v: usize) -> u64 {
        self.ledgers[v].total()
    }

    pub fn totals(&self) -> Vec<u64> {
        self.ledgers.iter().map(Ledger::total).collect()
    }

    /// `|Δ|`.
    pub fn total(&self) -> u64 {
        self.ledgers.iter().map(Ledger::total).sum()
    }

    /// Sum over vertices per origin.
    pub fn per_origin(&self) -> BTreeMap<OriginId, u64> {
        let mut out = BTreeMap::new();
        for l in &self.ledgers {
            for &(o, u) in l.entries() {
                *out.entry(o).or_insert(0) += u;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascending_and_descending_takes() {
        let mut l = Ledger::new();
        l.add(3, 2);
        l.add(1, 4);
        l.add(7, 1);
        let mut got = Vec::new();
        l.take_ascending(5, |o, u| got.push((o, u)));
        assert_eq!(got, vec![(1, 4), (3, 1)]);
        assert_eq!(l.entries(), &[(3, 1), (7, 1)]);
        got.clear();
        l.take_descending(2, |o, u| got.push((o, u)));
        assert_eq!(got, vec![(7, 1), (3, 1)]);
        assert!(l.is_empty());
    }

    #[test]
    fn split_keeps_low_origins() {
        let mut l = Ledger::new();
        l.add(0, 3);
        l.add(5, 3);
        let (a, b) = l.split_ascending(4);
        assert_eq!(a.entries(), &[(0, 3), (5, 1)]);
        assert_eq!(b.entries(), &[(5, 2)]);
    }

    #[test]
    fn source_totals() {
        let s = SourceFunction::from_totals(&[2, 0, 5]);
        assert_eq!(s.total(), 7);
        assert_eq!(s.totals(), vec![2, 0, 5]);
        assert_eq!(s.per_origin().get(&2), Some(&5));
        assert!(s.ledger(1).is_empty());
    }
}

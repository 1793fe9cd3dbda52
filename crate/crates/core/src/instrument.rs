//! Counters, trace events and counting wrappers.
//!
//! Every element write in this crate is performed through exactly one
//! `Clone::clone` call, so [`WriteMonitor`] (which counts clones) observes
//! the same number as [`SortStats::element_writes`] without sharing any code
//! with the sorters.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::rc::Rc;

use crate::stage::StateId;

/// Per-call counters returned by every sort in this crate.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SortStats {
    pub comparisons: u64,
    /// Copies of an element into the array, the pivot slot, the holdover
    /// slot or the temporary buffer.
    pub element_writes: u64,
    /// The subset of `element_writes` spent extracting and restoring pivots.
    pub pivot_writes: u64,
    pub temp_high_water: usize,
    pub max_depth: usize,
    pub stages: u64,
    pub state_activations: StateCounts,
    pub handlers: HandlerCounts,
}

impl SortStats {
    /// Copy-based cost expressed in three-write swaps.
    pub fn virtual_swaps(&self) -> f64 {
        self.element_writes as f64 / 3.0
    }

    /// Writes that actually relocate elements, i.e. everything except
    /// pivot extraction and restore.
    pub fn migration_writes(&self) -> u64 {
        self.element_writes - self.pivot_writes
    }

    pub fn merge(&mut self, other: &SortStats) {
        self.comparisons += other.comparisons;
        self.element_writes += other.element_writes;
        self.pivot_writes += other.pivot_writes;
        self.temp_high_water = self.temp_high_water.max(other.temp_high_water);
        self.max_depth = self.max_depth.max(other.max_depth);
        self.stages += other.stages;
        for (a, b) in self
            .state_activations
            .0
            .iter_mut()
            .zip(other.state_activations.0)
        {
            *a += b;
        }
        self.handlers.sorted += other.handlers.sorted;
        self.handlers.reversed += other.handlers.reversed;
        self.handlers.fallbacks += other.handlers.fallbacks;
    }
}

/// Activation count per partition state.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StateCounts(pub [u64; StateId::COUNT]);

impl StateCounts {
    pub fn get(&self, s: StateId) -> u64 {
        self.0[s as usize]
    }

    pub(crate) fn bump(&mut self, s: StateId) {
        self.0[s as usize] += 1;
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HandlerCounts {
    pub sorted: u64,
    pub reversed: u64,
    pub fallbacks: u64,
}

/// Where an element write landed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Array(usize),
    Pivot,
    Holdover,
    Buffer,
    /// Scratch copy used by a swap or a sample rotation.
    Scratch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HandlerKind {
    PossiblySorted,
    PossiblyReversed,
}

/// Bounds reported at the end of a partition stage.
///
/// `[a, lo_end)` holds elements less than the pivot, `[lo_end, hi_start)`
/// elements equal to it and `[hi_start, end)` greater ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StageBounds {
    pub a: usize,
    pub lo_end: usize,
    pub hi_start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceEvent {
    Compare { index: usize },
    Write { slot: Slot },
    StateEnter(StateId),
    StageEnd(StageBounds),
    HandlerEnter(HandlerKind),
    HandlerFallback(HandlerKind),
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEvent::Compare { index } => write!(f, "compare {index}"),
            TraceEvent::Write { slot } => match slot {
                Slot::Array(i) => write!(f, "write array {i}"),
                Slot::Pivot => write!(f, "write pivot"),
                Slot::Holdover => write!(f, "write holdover"),
                Slot::Buffer => write!(f, "write buffer"),
                Slot::Scratch => write!(f, "write scratch"),
            },
            TraceEvent::StateEnter(s) => write!(f, "state {s:?}"),
            TraceEvent::StageEnd(b) => {
                write!(f, "stage_end {} {} {} {}", b.a, b.lo_end, b.hi_start, b.end)
            }
            TraceEvent::HandlerEnter(h) => write!(f, "handler {h:?}"),
            TraceEvent::HandlerFallback(h) => write!(f, "fallback {h:?}"),
        }
    }
}

/// Recorded event stream of one sort call.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl Trace {
    pub fn push(&mut self, e: TraceEvent) {
        self.events.push(e);
    }

    /// One event per line.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for e in &self.events {
            s.push_str(&e.to_string());
            s.push('\n');
        }
        s
    }

    pub fn count(&self, pred: impl Fn(&TraceEvent) -> bool) -> usize {
        self.events.iter().filter(|e| pred(e)).count()
    }
}

/// Shared counter read back after a counted sort.
#[derive(Debug, Clone, Default)]
pub struct Counter(Rc<Cell<u64>>);

impl Counter {
    pub fn get(&self) -> u64 {
        self.0.get()
    }

    fn bump(&self) {
        self.0.set(self.0.get() + 1);
    }
}

/// Wraps a comparator so every invocation bumps a counter.
pub fn counting_comparator<T, F>(mut inner: F) -> (impl FnMut(&T, &T) -> Ordering, Counter)
where
    F: FnMut(&T, &T) -> Ordering,
{
    let counter = Counter::default();
    let c = counter.clone();
    let wrapped = move |x: &T, y: &T| {
        c.bump();
        inner(x, y)
    };
    (wrapped, counter)
}

/// Element wrapper whose `Clone` impl bumps a shared write counter.
#[derive(Debug)]
pub struct Counted<T> {
    pub value: T,
    writes: Counter,
}

impl<T: Clone> Clone for Counted<T> {
    fn clone(&self) -> Self {
        self.writes.bump();
        Counted {
            value: self.value.clone(),
            writes: self.writes.clone(),
        }
    }
}

impl<T: PartialEq> PartialEq for Counted<T> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<T: Eq> Eq for Counted<T> {}

impl<T: PartialOrd> PartialOrd for Counted<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.partial_cmp(&other.value)
    }
}

impl<T: Ord> Ord for Counted<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

/// Shadow write monitor over an array.
pub struct WriteMonitor<T> {
    pub items: Vec<Counted<T>>,
    counter: Counter,
}

impl<T> WriteMonitor<T> {
    pub fn writes(&self) -> u64 {
        self.counter.get()
    }

    pub fn into_values(self) -> Vec<T> {
        self.items.into_iter().map(|c| c.value).collect()
    }
}

/// Wraps each element so that every element store made by a sort is counted.
pub fn shadow_write_monitor<T>(values: Vec<T>) -> WriteMonitor<T> {
    let counter = Counter::default();
    let items = values
        .into_iter()
        .map(|value| Counted {
            value,
            writes: counter.clone(),
        })
        .collect();
    WriteMonitor { items, counter }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counting_comparator_counts_each_call() {
        let (mut cmp, count) = counting_comparator(|a: &i32, b: &i32| a.cmp(b));
        assert_eq!(cmp(&1, &2), Ordering::Less);
        assert_eq!(count.get(), 1);
        assert_eq!(cmp(&2, &2), Ordering::Equal);
        assert_eq!(count.get(), 2);
    }

    #[test]
    fn monitor_counts_clones_only() {
        let m = shadow_write_monitor(vec![3, 1, 2]);
        assert_eq!(m.writes(), 0);
        let c = m.items[0].clone();
        assert_eq!(c.value, 3);
        assert_eq!(m.writes(), 1);
        assert!(m.items[1] < m.items[2]);
    }

    #[test]
    fn trace_dump_is_line_oriented() {
        let mut t = Trace::default();
        t.push(TraceEvent::Compare { index: 4 });
        t.push(TraceEvent::Write {
            slot: Slot::Array(2),
        });
        t.push(TraceEvent::StageEnd(StageBounds {
            a: 0,
            lo_end: 1,
            hi_start: 2,
            end: 3,
        }));
        assert_eq!(t.dump(), "compare 4\nwrite array 2\nstage_end 0 1 2 3\n");
    }

    #[test]
    fn virtual_swaps_is_a_third_of_writes() {
        let s = SortStats {
            element_writes: 9,
            ..Default::default()
        };
        assert_eq!(s.virtual_swaps(), 3.0);
    }
}

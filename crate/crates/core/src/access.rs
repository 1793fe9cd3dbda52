//! Counted access to the array being sorted.
//!
//! All sorters route comparisons and element stores through [`Ctx`], which
//! keeps [`SortStats`] and the optional trace and slot shadow in sync.

use std::cmp::Ordering;

use crate::instrument::{Slot, SortStats, StageBounds, Trace, TraceEvent};

pub(crate) type Observer<'a, T> = &'a mut dyn FnMut(&[T], StageBounds);

/// Tracks which array slots are logically empty during a partition stage.
pub(crate) struct SlotShadow {
    occupied: Vec<bool>,
    empties: usize,
    buffered: usize,
    armed: bool,
}

impl SlotShadow {
    fn new(n: usize) -> Self {
        SlotShadow {
            occupied: vec![true; n],
            empties: 0,
            buffered: 0,
            armed: false,
        }
    }

    fn vacate(&mut self, i: usize) {
        assert!(self.occupied[i], "slot {i} vacated twice");
        self.occupied[i] = false;
        self.empties += 1;
    }

    fn fill(&mut self, i: usize) {
        assert!(
            !self.occupied[i],
            "slot {i} overwritten while holding a live element"
        );
        self.occupied[i] = true;
        self.empties -= 1;
    }
}

pub(crate) struct Ctx<'a, T, F> {
    pub v: &'a mut [T],
    cmp: F,
    pub stats: SortStats,
    trace: Option<&'a mut Trace>,
    shadow: Option<SlotShadow>,
    observer: Option<Observer<'a, T>>,
}

impl<'a, T: Clone, F: FnMut(&T, &T) -> Ordering> Ctx<'a, T, F> {
    pub fn new(v: &'a mut [T], cmp: F) -> Self {
        Ctx {
            v,
            cmp,
            stats: SortStats::default(),
            trace: None,
            shadow: None,
            observer: None,
        }
    }

    pub fn with_trace(mut self, trace: Option<&'a mut Trace>) -> Self {
        self.trace = trace;
        self
    }

    pub fn with_slot_checks(mut self, on: bool) -> Self {
        if on {
            self.shadow = Some(SlotShadow::new(self.v.len()));
        }
        self
    }

    pub fn with_observer(mut self, observer: Option<Observer<'a, T>>) -> Self {
        self.observer = observer;
        self
    }

    pub fn into_stats(self) -> SortStats {
        self.stats
    }

    #[inline]
    fn note(&mut self, e: TraceEvent) {
        if let Some(t) = self.trace.as_deref_mut() {
            t.push(e);
        }
    }

    #[inline]
    fn wrote(&mut self, slot: Slot) {
        self.stats.element_writes += 1;
        if self.trace.is_some() {
            self.note(TraceEvent::Write { slot });
        }
    }

    pub fn event(&mut self, e: TraceEvent) {
        self.note(e);
    }

    /// `cmp(v[i], v[j])`.
    #[inline]
    pub fn cmp_ij(&mut self, i: usize, j: usize) -> Ordering {
        self.stats.comparisons += 1;
        if self.trace.is_some() {
            self.note(TraceEvent::Compare { index: i });
        }
        (self.cmp)(&self.v[i], &self.v[j])
    }

    /// `cmp(v[i], x)`.
    #[inline]
    pub fn cmp_with(&mut self, i: usize, x: &T) -> Ordering {
        self.stats.comparisons += 1;
        if self.trace.is_some() {
            self.note(TraceEvent::Compare { index: i });
        }
        (self.cmp)(&self.v[i], x)
    }

    /// `cmp(x, y)` for two held elements.
    #[inline]
    pub fn cmp_held(&mut self, x: &T, y: &T) -> Ordering {
        self.stats.comparisons += 1;
        (self.cmp)(x, y)
    }

    /// `cmp(x, v[i])`.
    #[inline]
    pub fn cmp_held_at(&mut self, x: &T, i: usize) -> Ordering {
        self.stats.comparisons += 1;
        if self.trace.is_some() {
            self.note(TraceEvent::Compare { index: i });
        }
        (self.cmp)(x, &self.v[i])
    }

    /// `v[dst] = v[src]`; `src` becomes logically empty.
    #[inline]
    pub fn copy(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        self.v[dst] = self.v[src].clone();
        self.wrote(Slot::Array(dst));
        if let Some(s) = self.shadow.as_mut() {
            s.fill(dst);
            s.vacate(src);
        }
        self.check_slots();
    }

    /// `v[dst] = v[src]` without slot bookkeeping (sample rotations, insertion sort).
    #[inline]
    pub fn assign(&mut self, dst: usize, src: usize) {
        self.v[dst] = self.v[src].clone();
        self.wrote(Slot::Array(dst));
    }

    /// Copies `v[i]` out into a held slot; `i` becomes logically empty.
    #[inline]
    pub fn take(&mut self, i: usize, slot: Slot) -> T {
        let x = self.v[i].clone();
        self.wrote(slot);
        if slot == Slot::Pivot {
            self.stats.pivot_writes += 1;
        }
        if let Some(s) = self.shadow.as_mut() {
            s.vacate(i);
        }
        x
    }

    /// Copies `v[i]` out without slot bookkeeping.
    #[inline]
    pub fn hold(&mut self, i: usize) -> T {
        let x = self.v[i].clone();
        self.wrote(Slot::Scratch);
        x
    }

    /// `v[i] = x` into an empty slot.
    #[inline]
    pub fn put(&mut self, i: usize, x: &T) {
        self.v[i] = x.clone();
        self.wrote(Slot::Array(i));
        if let Some(s) = self.shadow.as_mut() {
            s.fill(i);
        }
    }

    /// Restores the pivot into empty slot `i`.
    #[inline]
    pub fn put_pivot(&mut self, i: usize, p: &T) {
        self.stats.pivot_writes += 1;
        self.put(i, p);
    }

    /// `v[i] = x` without slot bookkeeping.
    #[inline]
    pub fn store(&mut self, i: usize, x: &T) {
        self.v[i] = x.clone();
        self.wrote(Slot::Array(i));
    }

    /// Three-write swap through a scratch copy.
    #[inline]
    pub fn swap(&mut self, i: usize, j: usize) {
        let t = self.hold(i);
        self.assign(i, j);
        self.store(j, &t);
    }

    /// Moves `v[i]` into the temporary buffer.
    #[inline]
    pub fn stash(&mut self, i: usize, buf: &mut Vec<T>) {
        buf.push(self.v[i].clone());
        self.wrote(Slot::Buffer);
        if let Some(s) = self.shadow.as_mut() {
            s.vacate(i);
            s.buffered += 1;
        }
        self.check_slots();
    }

    /// Moves the last buffered element into empty slot `i`.
    #[inline]
    pub fn unstash(&mut self, i: usize, buf: &mut Vec<T>) {
        let x = buf.pop().expect("temporary buffer underflow");
        self.v[i] = x.clone();
        self.wrote(Slot::Array(i));
        if let Some(s) = self.shadow.as_mut() {
            s.fill(i);
            s.buffered -= 1;
        }
        self.check_slots();
    }

    /// Starts or stops checking the two-empty-slot law.
    pub fn arm_slots(&mut self, on: bool) {
        if let Some(s) = self.shadow.as_mut() {
            s.armed = on;
        }
    }

    /// Asserts that exactly two slots are empty besides the ones whose
    /// elements sit in the temporary buffer.
    #[inline]
    pub fn check_slots(&self) {
        if let Some(s) = self.shadow.as_ref() {
            if s.armed {
                assert_eq!(
                    s.empties,
                    2 + s.buffered,
                    "expected two empty slots plus {} buffered",
                    s.buffered
                );
            }
        }
    }

    pub fn stage_end(&mut self, b: StageBounds) {
        self.note(TraceEvent::StageEnd(b));
        if let Some(obs) = self.observer.as_mut() {
            obs(self.v, b);
        }
    }
}

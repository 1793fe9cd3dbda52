//! One partition stage: pivot extraction, the five partition states, the
//! buffer drain and the final restore of the two held-out elements.
//!
//! Two array slots are empty at every instant of a stage (three or more
//! while equals sit in the temporary buffer). One is freed by lifting the
//! pivot out, the other by lifting the *holdover* element out, so every
//! element move is a single copy instead of a three-copy swap.

use std::cmp::Ordering::{self, Equal, Greater, Less};

use crate::access::Ctx;
use crate::handlers::{self, HandlerOutcome};
use crate::instrument::{HandlerKind, Slot, StageBounds, TraceEvent};
use crate::pivot::{OrderFlag, PivotDecision};

/// Partition states and exits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateId {
    S1 = 0,
    S2L,
    S2R,
    S3L,
    S3R,
    Exit2,
    Exit3L,
    Exit3R,
}

impl StateId {
    pub const COUNT: usize = 8;
    pub const ALL: [StateId; StateId::COUNT] = [
        StateId::S1,
        StateId::S2L,
        StateId::S2R,
        StateId::S3L,
        StateId::S3R,
        StateId::Exit2,
        StateId::Exit3L,
        StateId::Exit3R,
    ];
}

/// Which side of the equals block has met its facing scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Scan indices of one stage.
///
/// `[a, l)` holds elements below the pivot and `(r, b]` elements above it.
/// `ml..=mr` brackets the equals block grown outward from `mid`, and `m`
/// is the equals slot currently being filled or scanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionFrame {
    pub a: usize,
    pub b: usize,
    pub l: usize,
    pub r: usize,
    pub ml: usize,
    pub mr: usize,
    pub m: usize,
    pub mid: usize,
    pub pi: usize,
    pub lc: Ordering,
}

impl PartitionFrame {
    pub fn new(a: usize, b: usize) -> Self {
        let mid = a + (b - a) / 2;
        PartitionFrame {
            a,
            b,
            l: a,
            r: b,
            ml: mid,
            mr: mid,
            m: mid,
            mid,
            pi: mid,
            lc: Equal,
        }
    }
}

/// Picks the follow-up state once State 1 has closed one side.
///
/// Few equals relative to the open span favour the buffered states; many
/// equals favour rolling the block in place.
pub fn choose_next_state(frame: &PartitionFrame, closed: Side) -> StateId {
    let equals = frame.mr - frame.ml;
    match closed {
        Side::Right => {
            if equals <= (frame.ml - frame.l) / 4 {
                StateId::S3L
            } else {
                StateId::S2L
            }
        }
        Side::Left => {
            if equals <= (frame.r - frame.mr) / 4 {
                StateId::S3R
            } else {
                StateId::S2R
            }
        }
    }
}

enum Step {
    /// Scan from `l`; holes at `r` and `m`.
    LScan(Option<Ordering>),
    /// Scan from `r`; holes at `l` and `m`.
    RScan,
    /// Holes at `l` and `r`; open a new equals slot on the wider side.
    Gap,
    MrScan,
    MlScan,
    /// `l == ml`; the flag asks to first move the hole from `mr` to `ml`.
    CloseL(bool),
    /// `r == mr`; the flag asks to first move the hole from `ml` to `mr`.
    CloseR(bool),
}

pub(crate) struct StageRun<'x, 'a, T, F> {
    ctx: &'x mut Ctx<'a, T, F>,
    f: PartitionFrame,
    p: T,
    temp: Option<T>,
    buf: &'x mut Vec<T>,
    buf_cap: usize,
}

/// Runs one stage on `v[a..=b]` whose pivot sits at `decision.pi`.
pub(crate) fn partition_stage<T, F>(
    ctx: &mut Ctx<'_, T, F>,
    a: usize,
    b: usize,
    decision: PivotDecision,
    reverse_tolerance: u32,
    buf: &mut Vec<T>,
    buf_cap: usize,
) -> StageBounds
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    debug_assert!(buf.is_empty());
    let mut f = PartitionFrame::new(a, b);
    if decision.pi != f.mid {
        ctx.swap(decision.pi, f.mid);
    }
    f.pi = f.mid;
    let p = ctx.take(f.mid, Slot::Pivot);
    let mut run = StageRun {
        ctx,
        f,
        p,
        temp: None,
        buf,
        buf_cap,
    };
    let outcome = match decision.order {
        OrderFlag::Sorted => {
            run.ctx.stats.handlers.sorted += 1;
            run.ctx
                .event(TraceEvent::HandlerEnter(HandlerKind::PossiblySorted));
            Some((
                HandlerKind::PossiblySorted,
                handlers::possibly_sorted_in(run.ctx, a, b, f.mid, &run.p),
            ))
        }
        OrderFlag::Reversed => {
            run.ctx.stats.handlers.reversed += 1;
            run.ctx
                .event(TraceEvent::HandlerEnter(HandlerKind::PossiblyReversed));
            Some((
                HandlerKind::PossiblyReversed,
                handlers::possibly_reversed_in(run.ctx, a, b, f.mid, &run.p, reverse_tolerance),
            ))
        }
        OrderFlag::Unknown => None,
    };
    match outcome {
        None => run.resume(a, b, None, None, None),
        Some((_, HandlerOutcome::Bypass { lo_end, hi_start })) => run.bypass(lo_end, hi_start),
        Some((
            kind,
            HandlerOutcome::FallbackState1 {
                l,
                r,
                lc_l,
                lc_r,
                equals,
            },
        )) => {
            run.ctx.stats.handlers.fallbacks += 1;
            run.ctx.event(TraceEvent::HandlerFallback(kind));
            run.resume(l, r, lc_l, lc_r, equals)
        }
    }
}

impl<'x, 'a, T, F> StageRun<'x, 'a, T, F>
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    fn enter(&mut self, s: StateId) {
        self.ctx.stats.state_activations.bump(s);
        self.ctx.event(TraceEvent::StateEnter(s));
    }

    #[inline]
    fn cmp(&mut self, i: usize) -> Ordering {
        self.ctx.cmp_with(i, &self.p)
    }

    fn stash(&mut self, i: usize) {
        assert!(
            self.buf.len() < self.buf_cap,
            "temporary buffer capacity exceeded"
        );
        self.ctx.stash(i, self.buf);
    }

    fn bounds(&self, lo_end: usize, hi_start: usize) -> StageBounds {
        StageBounds {
            a: self.f.a,
            lo_end,
            hi_start,
            end: self.f.b + 1,
        }
    }

    fn bypass(&mut self, lo_end: usize, hi_start: usize) -> StageBounds {
        let mid = self.f.mid;
        self.ctx.put_pivot(mid, &self.p);
        let b = self.bounds(lo_end, hi_start);
        self.ctx.stage_end(b);
        b
    }

    /// Enters State 1 with `[a, l)` known below and `(r, b]` known above the
    /// pivot. Cached comparisons of `v[l]` / `v[r]` are reused, and so is a
    /// known run of pivot-equal elements around `mid`.
    pub(crate) fn resume(
        &mut self,
        l: usize,
        r: usize,
        lc_l: Option<Ordering>,
        lc_r: Option<Ordering>,
        equals: Option<(usize, usize)>,
    ) -> StageBounds {
        let mid = self.f.mid;
        let mut r = r;
        let mut cached = lc_r;
        let stop = loop {
            if r == mid {
                break None;
            }
            let c = match cached.take() {
                Some(c) => c,
                None => self.cmp(r),
            };
            if c == Greater {
                r -= 1;
            } else {
                break Some(c);
            }
        };
        self.f.l = l;
        self.f.r = r;
        self.f.m = mid;
        self.f.ml = mid;
        self.f.mr = mid;
        match stop {
            None if l == mid => self.bypass(mid, mid + 1),
            None => {
                let mut l = l;
                let mut cached = lc_l;
                while l < mid {
                    let c = match cached.take() {
                        Some(c) => c,
                        None => self.cmp(l),
                    };
                    if c != Less {
                        break;
                    }
                    l += 1;
                }
                if l == mid {
                    return self.bypass(mid, mid + 1);
                }
                self.f.l = l;
                self.temp = Some(self.ctx.take(l, Slot::Holdover));
                self.ctx.arm_slots(true);
                self.state1(Step::CloseR(false))
            }
            Some(_) => {
                self.temp = Some(self.ctx.take(r, Slot::Holdover));
                self.ctx.arm_slots(true);
                if let Some((lo, hi)) = equals {
                    self.adopt_equals(lo, hi);
                }
                if l == mid {
                    self.state1(Step::CloseL(false))
                } else {
                    self.state1(Step::LScan(lc_l))
                }
            }
        }
    }

    /// Takes `[lo, hi]` as the equals block. The pivot hole at `mid` is moved
    /// to an end of the block, where State 1 keeps it.
    fn adopt_equals(&mut self, lo: usize, hi: usize) {
        let mid = self.f.mid;
        debug_assert!(self.f.l <= lo && lo <= mid && mid <= hi && hi < self.f.r);
        if self.f.l == mid {
            self.f.mr = hi;
        } else if hi > mid {
            self.ctx.copy(mid, hi);
            self.f.ml = lo;
            self.f.mr = hi;
            self.f.m = hi;
        } else if lo < mid {
            self.ctx.copy(mid, lo);
            self.f.ml = lo;
            self.f.m = lo;
        }
    }

    fn state1(&mut self, mut step: Step) -> StageBounds {
        self.enter(StateId::S1);
        loop {
            let f = &mut self.f;
            step = match step {
                Step::LScan(cached) => {
                    if f.l == f.ml {
                        Step::CloseL(true)
                    } else {
                        let (l, r, m) = (f.l, f.r, f.m);
                        let c = match cached {
                            Some(c) => c,
                            None => self.cmp(l),
                        };
                        let f = &mut self.f;
                        match c {
                            Less => {
                                f.l += 1;
                                Step::LScan(None)
                            }
                            Equal => {
                                self.ctx.copy(m, l);
                                Step::Gap
                            }
                            Greater => {
                                f.r -= 1;
                                self.ctx.copy(r, l);
                                Step::RScan
                            }
                        }
                    }
                }
                Step::RScan => {
                    if f.r == f.mr {
                        Step::CloseR(true)
                    } else {
                        let (l, r, m) = (f.l, f.r, f.m);
                        let c = self.cmp(r);
                        let f = &mut self.f;
                        match c {
                            Greater => {
                                f.r -= 1;
                                Step::RScan
                            }
                            Equal => {
                                self.ctx.copy(m, r);
                                Step::Gap
                            }
                            Less => {
                                f.l += 1;
                                self.ctx.copy(l, r);
                                Step::LScan(None)
                            }
                        }
                    }
                }
                Step::Gap => {
                    if f.r - f.mr > f.ml - f.l {
                        f.mr += 1;
                        if f.mr == f.r {
                            Step::CloseR(false)
                        } else {
                            Step::MrScan
                        }
                    } else {
                        f.ml -= 1;
                        if f.ml == f.l {
                            Step::CloseL(false)
                        } else {
                            Step::MlScan
                        }
                    }
                }
                Step::MrScan => {
                    let (l, r, mr) = (f.l, f.r, f.mr);
                    let c = self.cmp(mr);
                    let f = &mut self.f;
                    match c {
                        Equal => {
                            f.mr += 1;
                            if f.mr == f.r {
                                Step::CloseR(false)
                            } else {
                                Step::MrScan
                            }
                        }
                        Less => {
                            f.l += 1;
                            f.m = mr;
                            self.ctx.copy(l, mr);
                            Step::LScan(None)
                        }
                        Greater => {
                            f.r -= 1;
                            f.m = mr;
                            self.ctx.copy(r, mr);
                            Step::RScan
                        }
                    }
                }
                Step::MlScan => {
                    let (l, r, ml) = (f.l, f.r, f.ml);
                    let c = self.cmp(ml);
                    let f = &mut self.f;
                    match c {
                        Equal => {
                            f.ml -= 1;
                            if f.ml == f.l {
                                Step::CloseL(false)
                            } else {
                                Step::MlScan
                            }
                        }
                        Less => {
                            f.l += 1;
                            f.m = ml;
                            self.ctx.copy(l, ml);
                            Step::LScan(None)
                        }
                        Greater => {
                            f.r -= 1;
                            f.m = ml;
                            self.ctx.copy(r, ml);
                            Step::RScan
                        }
                    }
                }
                Step::CloseL(check_m) => {
                    if check_m && f.m != f.ml {
                        let (mr, ml) = (f.mr, f.ml);
                        self.ctx.copy(mr, ml);
                    }
                    return self.close_left();
                }
                Step::CloseR(check_m) => {
                    if check_m && f.m != f.mr {
                        let (mr, ml) = (f.mr, f.ml);
                        self.ctx.copy(ml, mr);
                    }
                    return self.close_right();
                }
            };
        }
    }
}

impl<'x, 'a, T, F> StageRun<'x, 'a, T, F>
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    fn fits_buffer(&self, stash_bound: usize) -> bool {
        stash_bound <= self.buf_cap - self.buf.len()
    }

    /// Left side closed (`l == ml`, holes at `l` and `r`): skip the equals
    /// adjoining `mr`, then pick State 2R or 3R.
    fn close_left(&mut self) -> StageBounds {
        let c = loop {
            self.f.mr += 1;
            if self.f.mr == self.f.r {
                return self.exit2();
            }
            let c = self.cmp(self.f.mr);
            if c != Equal {
                break c;
            }
        };
        self.f.m = self.f.mr;
        self.f.mr -= 1;
        self.f.lc = c;
        let f = self.f;
        let mut next = choose_next_state(&f, Side::Left);
        if next == StateId::S3R && !self.fits_buffer((f.mr - f.ml) + (f.r - f.m)) {
            next = StateId::S2R;
        }
        if next == StateId::S3R {
            self.state3r(c)
        } else {
            self.state2r(c)
        }
    }

    /// Right side closed (`r == mr`, holes at `l` and `r`): skip the equals
    /// adjoining `ml`, then pick State 2L or 3L.
    fn close_right(&mut self) -> StageBounds {
        let c = loop {
            self.f.ml -= 1;
            if self.f.ml == self.f.l {
                return self.exit2();
            }
            let c = self.cmp(self.f.ml);
            if c != Equal {
                break c;
            }
        };
        self.f.m = self.f.ml;
        self.f.ml += 1;
        self.f.lc = c;
        let f = self.f;
        let mut next = choose_next_state(&f, Side::Right);
        if next == StateId::S3L && !self.fits_buffer((f.mr - f.ml) + (f.m - f.l)) {
            next = StateId::S2L;
        }
        if next == StateId::S3L {
            self.state3l(c)
        } else {
            self.state2l(c)
        }
    }

    /// Equals stay in the array at `[m + 1, r)`; `m` scans down to `l`.
    /// Each exported greater element rolls the block down one slot.
    fn state2l(&mut self, lc: Ordering) -> StageBounds {
        self.enter(StateId::S2L);
        let mut c = lc;
        loop {
            let (l, r, m) = (self.f.l, self.f.r, self.f.m);
            match c {
                Equal => self.f.m -= 1,
                Greater => {
                    self.ctx.copy(r, m);
                    self.ctx.copy(m, r - 1);
                    self.f.r -= 1;
                    self.f.m -= 1;
                }
                Less => {
                    self.ctx.copy(l, m);
                    self.f.l += 1;
                    loop {
                        let (l, r, m) = (self.f.l, self.f.r, self.f.m);
                        if l == m {
                            return self.exit2();
                        }
                        match self.cmp(l) {
                            Less => self.f.l += 1,
                            Equal => {
                                self.ctx.copy(m, l);
                                self.f.m -= 1;
                                break;
                            }
                            Greater => {
                                self.ctx.copy(r, l);
                                self.ctx.copy(m, r - 1);
                                self.f.r -= 1;
                                self.f.m -= 1;
                                break;
                            }
                        }
                    }
                }
            }
            if self.f.m == self.f.l {
                return self.exit2();
            }
            c = self.cmp(self.f.m);
        }
    }

    /// Mirror of [`Self::state2l`]: equals at `(l, m)`, `m` scans up to `r`.
    fn state2r(&mut self, lc: Ordering) -> StageBounds {
        self.enter(StateId::S2R);
        let mut c = lc;
        loop {
            let (l, r, m) = (self.f.l, self.f.r, self.f.m);
            match c {
                Equal => self.f.m += 1,
                Less => {
                    self.ctx.copy(l, m);
                    self.ctx.copy(m, l + 1);
                    self.f.l += 1;
                    self.f.m += 1;
                }
                Greater => {
                    self.ctx.copy(r, m);
                    self.f.r -= 1;
                    loop {
                        let (l, r, m) = (self.f.l, self.f.r, self.f.m);
                        if r == m {
                            return self.exit2();
                        }
                        match self.cmp(r) {
                            Greater => self.f.r -= 1,
                            Equal => {
                                self.ctx.copy(m, r);
                                self.f.m += 1;
                                break;
                            }
                            Less => {
                                self.ctx.copy(l, r);
                                self.ctx.copy(m, l + 1);
                                self.f.l += 1;
                                self.f.m += 1;
                                break;
                            }
                        }
                    }
                }
            }
            if self.f.m == self.f.r {
                return self.exit2();
            }
            c = self.cmp(self.f.m);
        }
    }
}

impl<'x, 'a, T, F> StageRun<'x, 'a, T, F>
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    /// Lands a greater element in the hole at `r` and reopens `r`, pushing
    /// the in-array equal there to the buffer when needed.
    fn export_right(&mut self, src: usize) {
        let r = self.f.r;
        self.ctx.copy(r, src);
        self.f.r -= 1;
        if self.f.r >= self.f.ml {
            self.stash(self.f.r);
        }
    }

    fn export_left(&mut self, src: usize) {
        let l = self.f.l;
        self.ctx.copy(l, src);
        self.f.l += 1;
        if self.f.l <= self.f.mr {
            self.stash(self.f.l);
        }
    }

    /// Equals met by `m` go to the buffer; runs of greater elements are
    /// block-copied into the gap at the right.
    fn state3l(&mut self, lc: Ordering) -> StageBounds {
        self.enter(StateId::S3L);
        let ml = self.f.ml;
        let mut c = lc;
        'scan: loop {
            let m = self.f.m;
            match c {
                Equal => {
                    self.stash(m);
                    self.f.m -= 1;
                }
                Less => {
                    let l = self.f.l;
                    self.ctx.copy(l, m);
                    self.f.l += 1;
                    loop {
                        let l = self.f.l;
                        if l == self.f.m {
                            break 'scan;
                        }
                        match self.cmp(l) {
                            Less => self.f.l += 1,
                            Equal => {
                                self.stash(l);
                                self.f.m -= 1;
                                break;
                            }
                            Greater => {
                                self.export_right(l);
                                self.f.m -= 1;
                                break;
                            }
                        }
                    }
                }
                Greater => {
                    let k = m;
                    loop {
                        self.f.m -= 1;
                        if self.f.m == self.f.l {
                            break;
                        }
                        c = self.cmp(self.f.m);
                        if c != Greater {
                            break;
                        }
                    }
                    let mut k2 = self.f.m + 1;
                    if k - self.f.m < self.f.r - k {
                        while k2 <= k {
                            self.export_right(k2);
                            k2 += 1;
                        }
                    } else {
                        loop {
                            let r = self.f.r;
                            self.ctx.copy(r, k2);
                            self.f.r -= 1;
                            if self.f.r >= ml {
                                self.stash(self.f.r);
                            } else if self.f.r <= k {
                                self.f.r = k2;
                                break;
                            }
                            k2 += 1;
                        }
                    }
                    if self.f.m == self.f.l {
                        break 'scan;
                    }
                    continue 'scan;
                }
            }
            if self.f.m == self.f.l {
                break;
            }
            c = self.cmp(self.f.m);
        }
        self.drain(StateId::Exit3L)
    }

    /// Mirror of [`Self::state3l`].
    fn state3r(&mut self, lc: Ordering) -> StageBounds {
        self.enter(StateId::S3R);
        let mr = self.f.mr;
        let mut c = lc;
        'scan: loop {
            let m = self.f.m;
            match c {
                Equal => {
                    self.stash(m);
                    self.f.m += 1;
                }
                Greater => {
                    let r = self.f.r;
                    self.ctx.copy(r, m);
                    self.f.r -= 1;
                    loop {
                        let r = self.f.r;
                        if r == self.f.m {
                            break 'scan;
                        }
                        match self.cmp(r) {
                            Greater => self.f.r -= 1,
                            Equal => {
                                self.stash(r);
                                self.f.m += 1;
                                break;
                            }
                            Less => {
                                self.export_left(r);
                                self.f.m += 1;
                                break;
                            }
                        }
                    }
                }
                Less => {
                    let k = m;
                    loop {
                        self.f.m += 1;
                        if self.f.m == self.f.r {
                            break;
                        }
                        c = self.cmp(self.f.m);
                        if c != Less {
                            break;
                        }
                    }
                    let mut k2 = self.f.m - 1;
                    if self.f.m - k < k - self.f.l {
                        loop {
                            self.export_left(k2);
                            if k2 == k {
                                break;
                            }
                            k2 -= 1;
                        }
                    } else {
                        loop {
                            let l = self.f.l;
                            self.ctx.copy(l, k2);
                            self.f.l += 1;
                            if self.f.l <= mr {
                                self.stash(self.f.l);
                            } else if self.f.l >= k {
                                self.f.l = k2;
                                break;
                            }
                            k2 -= 1;
                        }
                    }
                    if self.f.m == self.f.r {
                        break 'scan;
                    }
                    continue 'scan;
                }
            }
            if self.f.m == self.f.r {
                break;
            }
            c = self.cmp(self.f.m);
        }
        self.drain(StateId::Exit3R)
    }

    /// Copies the buffered equals back into the gap next to the scan end.
    fn drain(&mut self, exit: StateId) -> StageBounds {
        self.enter(exit);
        let hw = self.buf.len();
        if hw > self.ctx.stats.temp_high_water {
            self.ctx.stats.temp_high_water = hw;
        }
        while !self.buf.is_empty() {
            if exit == StateId::Exit3L {
                self.f.m += 1;
            } else {
                self.f.m -= 1;
            }
            self.ctx.unstash(self.f.m, self.buf);
        }
        self.restore()
    }

    fn exit2(&mut self) -> StageBounds {
        self.enter(StateId::Exit2);
        self.restore()
    }

    /// Holes at `l < r` with only pivot-equal elements between them: put
    /// the holdover and the pivot back and report the final layout.
    fn restore(&mut self) -> StageBounds {
        self.ctx.arm_slots(false);
        let (l, r) = (self.f.l, self.f.r);
        let temp = self.temp.take().expect("holdover element missing");
        let c = self.ctx.cmp_held(&temp, &self.p);
        let b = if c != Less {
            self.ctx.put(r, &temp);
            self.ctx.put_pivot(l, &self.p);
            self.bounds(l, if c == Equal { r + 1 } else { r })
        } else {
            self.ctx.put(l, &temp);
            self.ctx.put_pivot(r, &self.p);
            self.bounds(l + 1, r + 1)
        };
        self.ctx.stage_end(b);
        b
    }
}

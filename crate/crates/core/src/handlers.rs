//! Fast paths for stages whose pivot samples looked sorted or reversed.
//!
//! Both handlers run with the pivot already lifted out of `mid`. They either
//! finish the stage outright or hand their progress to State 1: everything
//! left of `l` is known to be below the pivot and everything right of `r`
//! above it, and the last comparison on each side is passed along so State 1
//! does not repeat it.

use std::cmp::Ordering::{self, Equal, Greater, Less};

use crate::access::Ctx;
use crate::instrument::SortStats;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HandlerOutcome {
    /// `[a, lo_end)` below, `[lo_end, hi_start)` equal, the rest above.
    Bypass { lo_end: usize, hi_start: usize },
    /// Resume State 1 at `l`/`r` with the cached comparisons, if any.
    FallbackState1 {
        l: usize,
        r: usize,
        lc_l: Option<Ordering>,
        lc_r: Option<Ordering>,
        /// `[lo, hi]` around `mid` already found equal to the pivot (the
        /// `mid` slot itself is the pivot's hole).
        equals: Option<(usize, usize)>,
    },
}

/// Scans `v[from..mid)` upward while `want` holds; returns the stop index and
/// the comparison that stopped it (`None` when `mid` was reached).
fn scan_up<T, F>(
    ctx: &mut Ctx<'_, T, F>,
    from: usize,
    mid: usize,
    p: &T,
    want: Ordering,
) -> (usize, Option<Ordering>)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let mut l = from;
    while l < mid {
        let c = ctx.cmp_with(l, p);
        if c != want {
            return (l, Some(c));
        }
        l += 1;
    }
    (mid, None)
}

fn scan_down<T, F>(
    ctx: &mut Ctx<'_, T, F>,
    from: usize,
    mid: usize,
    p: &T,
    want: Ordering,
) -> (usize, Option<Ordering>)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let mut r = from;
    while r > mid {
        let c = ctx.cmp_with(r, p);
        if c != want {
            return (r, Some(c));
        }
        r -= 1;
    }
    (mid, None)
}

/// Checks `[l, r]` (minus `mid` and the two already-compared ends) for
/// pivot-equal elements only, working outward from `mid` on alternate sides
/// so a failing check gives up close to the middle. On failure returns the
/// bracket around `mid` verified so far.
fn all_equal_between<T, F>(
    ctx: &mut Ctx<'_, T, F>,
    l: usize,
    r: usize,
    mid: usize,
    p: &T,
) -> Result<(), (usize, usize)>
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let left_stop = if l < mid { l + 1 } else { mid };
    let right_stop = if r > mid { r - 1 } else { mid };
    let (mut i, mut j) = (mid, mid);
    while i > left_stop || j < right_stop {
        if i > left_stop {
            if ctx.cmp_with(i - 1, p) != Equal {
                return Err((i, j));
            }
            i -= 1;
        }
        if j < right_stop {
            if ctx.cmp_with(j + 1, p) != Equal {
                return Err((i, j));
            }
            j += 1;
        }
    }
    Ok(())
}

pub(crate) fn possibly_sorted_in<T, F>(
    ctx: &mut Ctx<'_, T, F>,
    a: usize,
    b: usize,
    mid: usize,
    p: &T,
) -> HandlerOutcome
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let (l, lc_l) = scan_up(ctx, a, mid, p, Less);
    if lc_l == Some(Greater) {
        return HandlerOutcome::FallbackState1 {
            l,
            r: b,
            lc_l,
            lc_r: None,
            equals: None,
        };
    }
    let (r, lc_r) = scan_down(ctx, b, mid, p, Greater);
    if lc_l.is_none() && lc_r.is_none() {
        return HandlerOutcome::Bypass {
            lo_end: mid,
            hi_start: mid + 1,
        };
    }
    let mut equals = None;
    if lc_r != Some(Less) {
        match all_equal_between(ctx, l, r, mid, p) {
            Ok(()) => {
                return HandlerOutcome::Bypass {
                    lo_end: l,
                    hi_start: r + 1,
                }
            }
            Err(bracket) => equals = Some(bracket),
        }
    }
    HandlerOutcome::FallbackState1 {
        l,
        r,
        lc_l,
        lc_r,
        equals,
    }
}

pub(crate) fn possibly_reversed_in<T, F>(
    ctx: &mut Ctx<'_, T, F>,
    a: usize,
    b: usize,
    mid: usize,
    p: &T,
    tolerance: u32,
) -> HandlerOutcome
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let (mut l, mut r) = (a, b);
    let (mut cl, mut cr) = (1u32, 1u32);
    let mut lc_l: Option<Ordering> = None;
    while l < mid && r > mid {
        let c = match lc_l.take() {
            Some(c) => c,
            None => ctx.cmp_with(l, p),
        };
        match c {
            Greater => match ctx.cmp_with(r, p) {
                Less => {
                    ctx.swap(l, r);
                    l += 1;
                    r -= 1;
                }
                Greater => {
                    r -= 1;
                    if cr > tolerance {
                        return HandlerOutcome::FallbackState1 {
                            l,
                            r,
                            lc_l: Some(Greater),
                            lc_r: None,
                            equals: None,
                        };
                    }
                    cr += 1;
                    lc_l = Some(Greater);
                }
                Equal => {
                    return HandlerOutcome::FallbackState1 {
                        l,
                        r,
                        lc_l: Some(Greater),
                        lc_r: Some(Equal),
                        equals: None,
                    };
                }
            },
            Less => {
                l += 1;
                if cl > tolerance {
                    return HandlerOutcome::FallbackState1 {
                        l,
                        r,
                        lc_l: None,
                        lc_r: None,
                        equals: None,
                    };
                }
                cl += 1;
            }
            Equal => {
                return HandlerOutcome::FallbackState1 {
                    l,
                    r,
                    lc_l: Some(Equal),
                    lc_r: None,
                    equals: None,
                };
            }
        }
    }
    if l == mid {
        let (r, lc_r) = scan_down(ctx, r, mid, p, Greater);
        return match lc_r {
            None => HandlerOutcome::Bypass {
                lo_end: mid,
                hi_start: mid + 1,
            },
            Some(_) => HandlerOutcome::FallbackState1 {
                l: mid,
                r,
                lc_l: None,
                lc_r,
                equals: None,
            },
        };
    }
    let (l, lc_l) = match lc_l {
        None => scan_up(ctx, l, mid, p, Less),
        Some(c) => (l, Some(c)),
    };
    match lc_l {
        None => HandlerOutcome::Bypass {
            lo_end: mid,
            hi_start: mid + 1,
        },
        Some(_) => HandlerOutcome::FallbackState1 {
            l,
            r: mid,
            lc_l,
            lc_r: None,
            equals: None,
        },
    }
}

/// Runs the sorted-input handler on `v[a..=b]` with the pivot at the
/// midpoint; the pivot slot is left untouched.
pub fn handle_possibly_sorted<T, F>(
    v: &mut [T],
    a: usize,
    b: usize,
    cmp: F,
) -> (HandlerOutcome, SortStats)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let mid = a + (b - a) / 2;
    let p = v[mid].clone();
    let mut ctx = Ctx::new(v, cmp);
    let out = possibly_sorted_in(&mut ctx, a, b, mid, &p);
    (out, ctx.into_stats())
}

/// Runs the reversed-input handler on `v[a..=b]` with the pivot at the
/// midpoint; the pivot slot is left untouched.
pub fn handle_possibly_reversed<T, F>(
    v: &mut [T],
    a: usize,
    b: usize,
    cmp: F,
    tolerance: u32,
) -> (HandlerOutcome, SortStats)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let mid = a + (b - a) / 2;
    let p = v[mid].clone();
    let mut ctx = Ctx::new(v, cmp);
    let out = possibly_reversed_in(&mut ctx, a, b, mid, &p, tolerance);
    (out, ctx.into_stats())
}

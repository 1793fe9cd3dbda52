//! Insertion sort that shifts through a held-out copy instead of swapping.

use std::cmp::Ordering;

use crate::access::Ctx;
use crate::instrument::SortStats;

/// Sorts `v[from..=to]`.
///
/// A displaced element costs one hold write, one write per shifted
/// neighbour and one placement write; elements already in place cost a
/// single comparison.
pub fn insertion_sort<T, F>(v: &mut [T], from: usize, to: usize, cmp: F) -> SortStats
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let mut ctx = Ctx::new(v, cmp);
    insertion_sort_in(&mut ctx, from, to);
    ctx.into_stats()
}

pub(crate) fn insertion_sort_in<T, F>(ctx: &mut Ctx<'_, T, F>, from: usize, to: usize)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    for k in from + 1..=to {
        if ctx.cmp_ij(k, k - 1) == Ordering::Less {
            let mut j = k;
            let temp = ctx.hold(j);
            ctx.assign(j, j - 1);
            j -= 1;
            if j > from {
                while ctx.cmp_held_at(&temp, j - 1) == Ordering::Less {
                    ctx.assign(j, j - 1);
                    j -= 1;
                    if j == from {
                        break;
                    }
                }
            }
            ctx.store(j, &temp);
        }
    }
}

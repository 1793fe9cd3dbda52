//! Instrumented reference quicksorts.
//!
//! Partitioning moves elements with three-write swaps only; short ranges go
//! to the same insertion sort the main sorter uses, so differences in
//! `virtual_swaps()` come from partitioning alone.

use std::cmp::Ordering::{self, Equal, Greater, Less};
use std::fmt;
use std::str::FromStr;

use crate::access::Ctx;
use crate::instrument::SortStats;
use crate::smallsort::insertion_sort_in;
use crate::sorter::{SortConfig, Sorter};

fn swap<T: Clone, F: FnMut(&T, &T) -> Ordering>(ctx: &mut Ctx<'_, T, F>, i: usize, j: usize) {
    if i != j {
        ctx.swap(i, j);
    }
}

fn note_depth<T, F>(ctx: &mut Ctx<'_, T, F>, depth: usize) {
    ctx.stats.max_depth = ctx.stats.max_depth.max(depth);
}

/// Index of the median of `v[i]`, `v[j]`, `v[k]`; comparisons only.
fn med3_index<T, F>(ctx: &mut Ctx<'_, T, F>, i: usize, j: usize, k: usize) -> usize
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    if ctx.cmp_ij(i, j) == Less {
        if ctx.cmp_ij(j, k) == Less {
            j
        } else if ctx.cmp_ij(i, k) == Less {
            k
        } else {
            i
        }
    } else if ctx.cmp_ij(j, k) == Greater {
        j
    } else if ctx.cmp_ij(i, k) == Greater {
        k
    } else {
        i
    }
}

/// Median-of-three Hoare quicksort. The pivot stays in the array and is
/// followed by index when a swap moves it.
pub fn classic_qsort<T, F>(v: &mut [T], cmp: F) -> SortStats
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    classic_qsort_with_cutoff(v, cmp, SortConfig::default().insertion_threshold)
}

/// [`classic_qsort`] with ranges of at most `cutoff` elements (minimum 3)
/// left to insertion sort.
pub fn classic_qsort_with_cutoff<T, F>(v: &mut [T], cmp: F, cutoff: usize) -> SortStats
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let n = v.len();
    let mut ctx = Ctx::new(v, cmp);
    if n > 1 {
        classic_rec(&mut ctx, 0, n - 1, cutoff.max(3), 1);
    }
    ctx.into_stats()
}

fn classic_rec<T, F>(
    ctx: &mut Ctx<'_, T, F>,
    mut lo: usize,
    mut hi: usize,
    cutoff: usize,
    mut depth: usize,
) where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    loop {
        note_depth(ctx, depth);
        if hi - lo < cutoff {
            insertion_sort_in(ctx, lo, hi);
            return;
        }
        ctx.stats.stages += 1;
        let mid = lo + (hi - lo) / 2;
        let mut piv = med3_index(ctx, lo, mid, hi);
        let (mut i, mut j) = (lo, hi);
        loop {
            while ctx.cmp_ij(i, piv) == Less {
                i += 1;
            }
            while ctx.cmp_ij(piv, j) == Less {
                j -= 1;
            }
            if i >= j {
                break;
            }
            ctx.swap(i, j);
            if piv == i {
                piv = j;
            } else if piv == j {
                piv = i;
            }
            i += 1;
            j -= 1;
        }
        // Hoare split: [lo, j] and [j + 1, hi], both non-empty.
        let left_len = j + 1 - lo;
        let right_len = hi - j;
        let (small, small_len, large, large_len) = if left_len <= right_len {
            ((lo, j), left_len, (j + 1, hi), right_len)
        } else {
            ((j + 1, hi), right_len, (lo, j), left_len)
        };
        if small_len > 1 {
            classic_rec(ctx, small.0, small.1, cutoff, depth + 1);
        }
        if large_len < 2 {
            return;
        }
        lo = large.0;
        hi = large.1;
        depth += 1;
    }
}

/// Split-end three-way quicksort: equals are parked at both ends during the
/// scan and swapped into the middle afterwards.
pub fn three_way_qsort<T, F>(v: &mut [T], cmp: F) -> SortStats
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let n = v.len();
    let mut ctx = Ctx::new(v, cmp);
    if n > 1 {
        three_way_rec(
            &mut ctx,
            0,
            n - 1,
            SortConfig::default().insertion_threshold,
            1,
        );
    }
    ctx.into_stats()
}

fn vecswap<T, F>(ctx: &mut Ctx<'_, T, F>, i: usize, j: usize, len: usize)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    for k in 0..len {
        swap(ctx, i + k, j + k);
    }
}

fn three_way_rec<T, F>(
    ctx: &mut Ctx<'_, T, F>,
    mut lo: usize,
    mut hi: usize,
    cutoff: usize,
    mut depth: usize,
) where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    loop {
        note_depth(ctx, depth);
        let n = hi - lo + 1;
        if n <= cutoff {
            insertion_sort_in(ctx, lo, hi);
            return;
        }
        ctx.stats.stages += 1;
        let mid = lo + n / 2;
        let m = if n > 40 {
            let s = n / 8;
            let x = med3_index(ctx, lo, lo + s, lo + 2 * s);
            let y = med3_index(ctx, mid - s, mid, mid + s);
            let z = med3_index(ctx, hi - 2 * s, hi - s, hi);
            med3_index(ctx, x, y, z)
        } else {
            med3_index(ctx, lo, mid, hi)
        };
        swap(ctx, lo, m);
        let (mut a, mut b) = (lo + 1, lo + 1);
        let (mut c, mut d) = (hi, hi);
        loop {
            while b <= c {
                match ctx.cmp_ij(b, lo) {
                    Greater => break,
                    Equal => {
                        swap(ctx, a, b);
                        a += 1;
                    }
                    Less => {}
                }
                b += 1;
            }
            while c >= b {
                match ctx.cmp_ij(c, lo) {
                    Less => break,
                    Equal => {
                        swap(ctx, c, d);
                        d -= 1;
                    }
                    Greater => {}
                }
                c -= 1;
            }
            if b > c {
                break;
            }
            ctx.swap(b, c);
            b += 1;
            c -= 1;
        }
        let s = (a - lo).min(b - a);
        vecswap(ctx, lo, b - s, s);
        let s = (d - c).min(hi - d);
        vecswap(ctx, b, hi + 1 - s, s);
        let left_len = b - a;
        let right_len = d - c;
        let left = (lo, lo + left_len);
        let right = (hi + 1 - right_len, hi + 1);
        let (small, large) = if left_len <= right_len {
            (left, right)
        } else {
            (right, left)
        };
        if small.1 - small.0 > 1 {
            three_way_rec(ctx, small.0, small.1 - 1, cutoff, depth + 1);
        }
        if large.1 - large.0 < 2 {
            return;
        }
        lo = large.0;
        hi = large.1 - 1;
        depth += 1;
    }
}

/// Dual-pivot quicksort: two pivots from five spaced samples, one scan
/// splitting the range into below, between and above.
pub fn dual_pivot_qsort<T, F>(v: &mut [T], cmp: F) -> SortStats
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let n = v.len();
    let mut ctx = Ctx::new(v, cmp);
    if n > 1 {
        let cutoff = SortConfig::default().insertion_threshold.max(6);
        dual_rec(&mut ctx, 0, n - 1, cutoff, 1);
    }
    ctx.into_stats()
}

/// Insertion-sorts the five sample positions in place.
fn sort5<T, F>(ctx: &mut Ctx<'_, T, F>, e: [usize; 5])
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    for i in 1..5 {
        let mut j = i;
        while j > 0 && ctx.cmp_ij(e[j], e[j - 1]) == Less {
            ctx.swap(e[j], e[j - 1]);
            j -= 1;
        }
    }
}

fn dual_rec<T, F>(ctx: &mut Ctx<'_, T, F>, left: usize, right: usize, cutoff: usize, depth: usize)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    note_depth(ctx, depth);
    let len = right - left + 1;
    if len <= cutoff {
        insertion_sort_in(ctx, left, right);
        return;
    }
    ctx.stats.stages += 1;
    let seventh = (len >> 3) + (len >> 6) + 1;
    let e3 = left + len / 2;
    let e = [
        e3 - 2 * seventh,
        e3 - seventh,
        e3,
        e3 + seventh,
        e3 + 2 * seventh,
    ];
    sort5(ctx, e);
    swap(ctx, e[1], left);
    swap(ctx, e[3], right);
    if ctx.cmp_ij(left, right) == Less {
        let (mut less, mut great) = (left + 1, right - 1);
        let mut k = less;
        while k <= great {
            if ctx.cmp_ij(k, left) == Less {
                swap(ctx, k, less);
                less += 1;
            } else if ctx.cmp_ij(k, right) == Greater {
                while k < great && ctx.cmp_ij(great, right) == Greater {
                    great -= 1;
                }
                swap(ctx, k, great);
                great -= 1;
                if ctx.cmp_ij(k, left) == Less {
                    swap(ctx, k, less);
                    less += 1;
                }
            }
            k += 1;
        }
        swap(ctx, left, less - 1);
        swap(ctx, right, great + 1);
        if less >= left + 3 {
            dual_rec(ctx, left, less - 2, cutoff, depth + 1);
        }
        if great + 1 > less + 1 {
            dual_rec(ctx, less, great, cutoff, depth + 1);
        }
        if right >= great + 3 {
            dual_rec(ctx, great + 2, right, cutoff, depth + 1);
        }
    } else {
        // Equal pivots: one Dijkstra three-way pass around v[left].
        let (mut lt, mut i, mut gt) = (left, left + 1, right);
        while i <= gt {
            match ctx.cmp_ij(i, lt) {
                Less => {
                    ctx.swap(lt, i);
                    lt += 1;
                    i += 1;
                }
                Greater => {
                    swap(ctx, i, gt);
                    gt -= 1;
                }
                Equal => i += 1,
            }
        }
        if lt >= left + 2 {
            dual_rec(ctx, left, lt - 1, cutoff, depth + 1);
        }
        if right >= gt + 2 {
            dual_rec(ctx, gt + 1, right, cutoff, depth + 1);
        }
    }
}

/// Quicksort that always partitions around the first element, with no
/// sampling, cutoff or randomisation. Exists to be beaten by the killer
/// adversary.
pub fn first_pivot_qsort<T, F>(v: &mut [T], cmp: F) -> SortStats
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let n = v.len();
    let mut ctx = Ctx::new(v, cmp);
    let (mut lo, mut hi) = (0, n);
    let mut stack = Vec::new();
    loop {
        if hi - lo < 2 {
            match stack.pop() {
                Some((l, h)) => {
                    lo = l;
                    hi = h;
                    continue;
                }
                None => break,
            }
        }
        ctx.stats.stages += 1;
        let mut store = lo + 1;
        for i in lo + 1..hi {
            if ctx.cmp_ij(i, lo) == Less {
                swap(&mut ctx, i, store);
                store += 1;
            }
        }
        swap(&mut ctx, lo, store - 1);
        stack.push((store, hi));
        note_depth(&mut ctx, stack.len());
        hi = store - 1;
    }
    ctx.into_stats()
}

/// The algorithms selectable by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Classic,
    ThreeWay,
    DualPivot,
    TriState,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Classic,
        Algorithm::ThreeWay,
        Algorithm::DualPivot,
        Algorithm::TriState,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Classic => "classic",
            Algorithm::ThreeWay => "threeway",
            Algorithm::DualPivot => "dualpivot",
            Algorithm::TriState => "tristate",
        }
    }

    /// Sorts `v`; `config` and `seed` only matter for [`Algorithm::TriState`].
    pub fn run<T, F>(self, v: &mut [T], cmp: F, config: &SortConfig, seed: u32) -> SortStats
    where
        T: Clone,
        F: FnMut(&T, &T) -> Ordering,
    {
        match self {
            Algorithm::Classic => classic_qsort(v, cmp),
            Algorithm::ThreeWay => three_way_qsort(v, cmp),
            Algorithm::DualPivot => dual_pivot_qsort(v, cmp),
            Algorithm::TriState => Sorter::with_seed(config.clone(), seed)
                .expect("invalid sort configuration")
                .sort_by(v, cmp)
                .expect("temporary buffer allocation failed"),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = crate::datagen::UnknownName;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.to_ascii_lowercase();
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or(crate::datagen::UnknownName(s))
    }
}

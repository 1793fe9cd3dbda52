//! Pivot selection ladder and sample jitter.
//!
//! Every selector leaves its median at the central sample position, which
//! the driver always chooses to be the stage midpoint. Selectors also report
//! an [`OrderFlag`] telling whether the samples looked sorted or reversed.
//!
//! Ties are broken by sample position throughout: `x[i]` counts as smaller
//! than `x[j]` for `i < j` unless `cmp(x[i], x[j])` is `Greater`. Under that
//! rule nondecreasing samples count as sorted and only strictly decreasing
//! ones as reversed.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::OnceLock;
use std::time::{SystemTime, UNIX_EPOCH};

use crate::access::Ctx;
use crate::instrument::SortStats;
use crate::sorter::SortConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderFlag {
    Sorted = 1,
    Unknown = 0,
    Reversed = -1,
}

/// Result of pivot selection; the pivot value is `v[pi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PivotDecision {
    pub pi: usize,
    pub order: OrderFlag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotMethod {
    MedianOf3,
    MedianOf5,
    Ninther,
    Fifteenth,
}

const R_A: u64 = 16807;
const R_M: u64 = 2_147_483_648;

/// Multiplicative congruential generator driving sample jitter.
#[derive(Debug, Clone, PartialEq)]
pub struct MitigationRng {
    zgen: u32,
    dran: f64,
    dran2: f64,
}

fn clock_seed() -> u32 {
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_nanos())
        .unwrap_or(0);
    let s = (nanos ^ (nanos >> 32)) as u32 & 0x7fff_ffff;
    if s == 0 {
        1
    } else {
        s
    }
}

impl MitigationRng {
    /// Seeded generator; a zero seed is replaced by a wall-clock seed.
    pub fn new(seed: u32) -> Self {
        let zgen = if seed == 0 { clock_seed() } else { seed };
        MitigationRng {
            zgen,
            dran: 1.0,
            dran2: 2.0,
        }
    }

    pub fn from_clock() -> Self {
        Self::new(0)
    }

    pub fn state(&self) -> u32 {
        self.zgen
    }

    /// Jitter factor in `[0.5, 1.5)`.
    pub fn dran(&self) -> f64 {
        self.dran
    }

    pub fn dran2(&self) -> f64 {
        self.dran2
    }

    /// Advances the state once.
    pub fn next(&mut self) {
        if self.zgen == 0 {
            self.zgen = clock_seed();
        }
        self.zgen = ((R_A * self.zgen as u64) % R_M) as u32;
        self.dran = 0.5 + self.zgen as f64 / R_M as f64;
        self.dran2 = 1.0 + self.dran;
    }
}

/// Sorts three samples in place and leaves their median at `i1`.
///
/// At most three comparisons and four writes.
pub(crate) fn med3<T, F>(ctx: &mut Ctx<'_, T, F>, i0: usize, i1: usize, i2: usize) -> OrderFlag
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    use Ordering::Less;
    if ctx.cmp_ij(i1, i0) != Less {
        if ctx.cmp_ij(i2, i0) != Less {
            if ctx.cmp_ij(i2, i1) != Less {
                // 0 1 2
                return OrderFlag::Sorted;
            }
            // 0 2 1
            let t = ctx.hold(i1);
            ctx.assign(i1, i2);
            ctx.store(i2, &t);
        } else {
            // 2 0 1
            let t = ctx.hold(i0);
            ctx.assign(i0, i2);
            ctx.assign(i2, i1);
            ctx.store(i1, &t);
        }
    } else if ctx.cmp_ij(i2, i1) != Less {
        if ctx.cmp_ij(i2, i0) != Less {
            // 1 0 2
            let t = ctx.hold(i0);
            ctx.assign(i0, i1);
            ctx.store(i1, &t);
        } else {
            // 1 2 0
            let t = ctx.hold(i0);
            ctx.assign(i0, i1);
            ctx.assign(i1, i2);
            ctx.store(i2, &t);
        }
    } else {
        // 2 1 0
        let t = ctx.hold(i0);
        ctx.assign(i0, i2);
        ctx.store(i2, &t);
        return OrderFlag::Reversed;
    }
    OrderFlag::Unknown
}

// ---------------------------------------------------------------------------
// Median of five.
//
// The decision tree is generated on first use by a minimax search over the
// 120 orderings of five samples. A node is a bitmask of the orderings still
// consistent with the answers so far; it is terminal once every remaining
// ordering agrees on which sample is the median and on whether the samples
// are fully ascending or fully descending. Once the median is known it is
// moved to the centre with at most one swap.

#[derive(Debug, Clone, Copy)]
enum Node {
    Done { median: u8 },
    Ask { i: u8, j: u8 },
}

struct Med5Tree {
    nodes: HashMap<u128, Node>,
    /// `greater[i][j]`: orderings with `x[i] > x[j]`.
    greater: [[u128; 5]; 5],
    identity: usize,
    reversal: usize,
    depth: u32,
}

const PAIRS: [(u8, u8); 10] = [
    (0, 1),
    (1, 2),
    (2, 3),
    (3, 4),
    (0, 2),
    (1, 3),
    (2, 4),
    (0, 3),
    (1, 4),
    (0, 4),
];

fn permutations5() -> Vec<[u8; 5]> {
    let mut out = Vec::with_capacity(120);
    let mut ranks = [0u8; 5];
    fn rec(k: usize, used: &mut [bool; 5], ranks: &mut [u8; 5], out: &mut Vec<[u8; 5]>) {
        if k == 5 {
            out.push(*ranks);
            return;
        }
        for r in 0..5 {
            if !used[r] {
                used[r] = true;
                ranks[k] = r as u8;
                rec(k + 1, used, ranks, out);
                used[r] = false;
            }
        }
    }
    rec(0, &mut [false; 5], &mut ranks, &mut out);
    out
}

impl Med5Tree {
    fn build() -> Self {
        let perms = permutations5();
        let mut greater = [[0u128; 5]; 5];
        for (k, ranks) in perms.iter().enumerate() {
            for i in 0..5 {
                for j in 0..5 {
                    if ranks[i] > ranks[j] {
                        greater[i][j] |= 1u128 << k;
                    }
                }
            }
        }
        let identity = perms.iter().position(|r| *r == [0, 1, 2, 3, 4]).unwrap();
        let reversal = perms.iter().position(|r| *r == [4, 3, 2, 1, 0]).unwrap();
        let mut tree = Med5Tree {
            nodes: HashMap::new(),
            greater,
            identity,
            reversal,
            depth: 0,
        };
        let all = (1u128 << perms.len()) - 1;
        let mut memo = HashMap::new();
        tree.depth = tree.solve(all, &perms, &mut memo);
        tree
    }

    fn solve(&mut self, mask: u128, perms: &[[u8; 5]], memo: &mut HashMap<u128, u32>) -> u32 {
        if let Some(&d) = memo.get(&mask) {
            return d;
        }
        if let Some(median) = Self::terminal(mask, perms, self.identity, self.reversal) {
            self.nodes.insert(mask, Node::Done { median });
            memo.insert(mask, 0);
            return 0;
        }
        let mut best = (u32::MAX, 0u8, 0u8);
        for &(i, j) in PAIRS.iter() {
            let gt = mask & self.greater[i as usize][j as usize];
            let le = mask & !gt;
            if gt == 0 || le == 0 {
                continue;
            }
            let d = 1 + self.solve(gt, perms, memo).max(self.solve(le, perms, memo));
            if d < best.0 {
                best = (d, i, j);
            }
        }
        self.nodes.insert(
            mask,
            Node::Ask {
                i: best.1,
                j: best.2,
            },
        );
        memo.insert(mask, best.0);
        best.0
    }

    fn terminal(mask: u128, perms: &[[u8; 5]], identity: usize, reversal: usize) -> Option<u8> {
        let bit = |k: usize| mask & (1u128 << k) != 0;
        let mut median = None;
        for (k, ranks) in perms.iter().enumerate() {
            if !bit(k) {
                continue;
            }
            let m = ranks.iter().position(|&r| r == 2).unwrap() as u8;
            match median {
                None => median = Some(m),
                Some(x) if x != m => return None,
                _ => {}
            }
        }
        let ones = mask.count_ones();
        for special in [identity, reversal] {
            if bit(special) && ones > 1 {
                return None;
            }
        }
        median
    }
}

fn med5_tree() -> &'static Med5Tree {
    static TREE: OnceLock<Med5Tree> = OnceLock::new();
    TREE.get_or_init(Med5Tree::build)
}

/// Worst-case comparison count of the generated median-of-five tree.
pub fn median_of_5_depth() -> u32 {
    med5_tree().depth
}

pub(crate) fn med5<T, F>(ctx: &mut Ctx<'_, T, F>, idx: [usize; 5]) -> OrderFlag
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let tree = med5_tree();
    let mut mask = (1u128 << 120) - 1;
    let median = loop {
        match tree.nodes[&mask] {
            Node::Done { median } => break median as usize,
            Node::Ask { i, j } => {
                let gt = tree.greater[i as usize][j as usize];
                if ctx.cmp_ij(idx[i as usize], idx[j as usize]) == Ordering::Greater {
                    mask &= gt;
                } else {
                    mask &= !gt;
                }
            }
        }
    };
    let flag = if mask == 1u128 << tree.identity {
        OrderFlag::Sorted
    } else if mask == 1u128 << tree.reversal {
        OrderFlag::Reversed
    } else {
        OrderFlag::Unknown
    };
    if median != 2 {
        ctx.swap(idx[median], idx[2]);
    }
    flag
}

fn combine(flags: &[OrderFlag]) -> OrderFlag {
    let first = flags[0];
    if first != OrderFlag::Unknown && flags.iter().all(|&f| f == first) {
        first
    } else {
        OrderFlag::Unknown
    }
}

pub(crate) fn ninther_in<T, F>(ctx: &mut Ctx<'_, T, F>, idx: [usize; 9]) -> OrderFlag
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let g0 = med3(ctx, idx[0], idx[1], idx[2]);
    let g1 = med3(ctx, idx[3], idx[4], idx[5]);
    let g2 = med3(ctx, idx[6], idx[7], idx[8]);
    let top = med3(ctx, idx[1], idx[4], idx[7]);
    combine(&[g0, g1, g2, top])
}

pub(crate) fn fifteenth_in<T, F>(ctx: &mut Ctx<'_, T, F>, idx: [usize; 15]) -> OrderFlag
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let mut flags = [OrderFlag::Unknown; 6];
    for g in 0..5 {
        flags[g] = med3(ctx, idx[3 * g], idx[3 * g + 1], idx[3 * g + 2]);
    }
    flags[5] = med5(ctx, [idx[1], idx[4], idx[7], idx[10], idx[13]]);
    combine(&flags)
}

/// Method chosen for a stage of `n` elements.
///
/// Falls back to a smaller sample when `n` cannot hold distinct, spaced
/// sample positions for the configured method.
pub fn method_for(n: usize, config: &SortConfig) -> PivotMethod {
    let m = ladder(n, config);
    if m == PivotMethod::Fifteenth && n < 15 || m == PivotMethod::Ninther && n < 9 {
        if n < 5 {
            PivotMethod::MedianOf3
        } else {
            PivotMethod::MedianOf5
        }
    } else if m == PivotMethod::MedianOf5 && n < 5 {
        PivotMethod::MedianOf3
    } else {
        m
    }
}

fn ladder(n: usize, config: &SortConfig) -> PivotMethod {
    if n < config.medof3_max_n {
        if config.medof3_small_enabled {
            PivotMethod::MedianOf3
        } else {
            PivotMethod::MedianOf5
        }
    } else if n < config.medof5_max_n {
        PivotMethod::MedianOf5
    } else if n < config.ninther_max_n {
        PivotMethod::Ninther
    } else {
        PivotMethod::Fifteenth
    }
}

/// Sample positions for `method` on `[a, b]`, strictly increasing, with the
/// central sample at `a + (b - a) / 2`.
///
/// `dran` scales the spacing of the interior samples; first, middle and
/// last samples never move. Spacing is clamped so every interior sample
/// stays at least one slot away from its neighbours.
pub fn sample_positions(method: PivotMethod, a: usize, b: usize, dran: f64) -> Vec<usize> {
    let n = b - a + 1;
    let mid = a + (b - a) / 2;
    let room = (mid - a).min(b - mid);
    let spacing = |nominal: usize, slots: usize| -> usize {
        let s = (nominal as f64 * dran) as usize;
        let cap = (room.saturating_sub(1) / slots).max(1);
        s.clamp(1, cap)
    };
    match method {
        PivotMethod::MedianOf3 => vec![a, mid, b],
        PivotMethod::MedianOf5 => {
            let s = (n / 4) as f64 * dran;
            let s = s as usize;
            let left = s.clamp(1, (mid - a).saturating_sub(1).max(1));
            let right = s.clamp(1, (b - mid).saturating_sub(1).max(1));
            vec![a, a + left, mid, b - right, b]
        }
        PivotMethod::Ninther => {
            let s = spacing(n / 8, 3);
            vec![
                a,
                a + s,
                a + 2 * s,
                mid - s,
                mid,
                mid + s,
                b - 2 * s,
                b - s,
                b,
            ]
        }
        PivotMethod::Fifteenth => {
            let s = spacing(n / 14, 6);
            let mut v = Vec::with_capacity(15);
            for k in 0..6 {
                v.push(a + k * s);
            }
            v.extend([mid - s, mid, mid + s]);
            for k in (0..6).rev() {
                v.push(b - k * s);
            }
            v
        }
    }
}

pub(crate) fn select_in<T, F>(
    ctx: &mut Ctx<'_, T, F>,
    a: usize,
    b: usize,
    config: &SortConfig,
    dran: f64,
) -> PivotDecision
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let mid = a + (b - a) / 2;
    let method = method_for(b - a + 1, config);
    let pos = sample_positions(method, a, b, dran);
    let order = match method {
        PivotMethod::MedianOf3 => med3(ctx, pos[0], pos[1], pos[2]),
        PivotMethod::MedianOf5 => med5(ctx, [pos[0], pos[1], pos[2], pos[3], pos[4]]),
        PivotMethod::Ninther => ninther_in(ctx, pos.try_into().unwrap()),
        PivotMethod::Fifteenth => fifteenth_in(ctx, pos.try_into().unwrap()),
    };
    PivotDecision { pi: mid, order }
}

/// Median of three samples; the median ends at `i1`.
pub fn median_of_3<T, F>(
    v: &mut [T],
    i0: usize,
    i1: usize,
    i2: usize,
    cmp: F,
) -> (PivotDecision, SortStats)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let mut ctx = Ctx::new(v, cmp);
    let order = med3(&mut ctx, i0, i1, i2);
    (PivotDecision { pi: i1, order }, ctx.into_stats())
}

/// Median of five samples; the median ends at `idx[2]`.
pub fn median_of_5<T, F>(v: &mut [T], idx: [usize; 5], cmp: F) -> (PivotDecision, SortStats)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let mut ctx = Ctx::new(v, cmp);
    let order = med5(&mut ctx, idx);
    (PivotDecision { pi: idx[2], order }, ctx.into_stats())
}

/// Median of the three group-of-three medians; the pivot ends at `idx[4]`.
pub fn ninther<T, F>(v: &mut [T], idx: [usize; 9], cmp: F) -> (PivotDecision, SortStats)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let mut ctx = Ctx::new(v, cmp);
    let order = ninther_in(&mut ctx, idx);
    (PivotDecision { pi: idx[4], order }, ctx.into_stats())
}

/// Median of five group-of-three medians; the pivot ends at `idx[7]`.
pub fn fifteenth<T, F>(v: &mut [T], idx: [usize; 15], cmp: F) -> (PivotDecision, SortStats)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let mut ctx = Ctx::new(v, cmp);
    let order = fifteenth_in(&mut ctx, idx);
    (PivotDecision { pi: idx[7], order }, ctx.into_stats())
}

/// Runs the ladder on `v[a..=b]` with the generator's current jitter
/// (or none when mitigation is off).
pub fn select_pivot<T, F>(
    v: &mut [T],
    a: usize,
    b: usize,
    config: &SortConfig,
    rng: &MitigationRng,
    cmp: F,
) -> (PivotDecision, SortStats)
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let dran = if config.mitigation_enabled {
        rng.dran()
    } else {
        1.0
    };
    let mut ctx = Ctx::new(v, cmp);
    let d = select_in(&mut ctx, a, b, config, dran);
    (d, ctx.into_stats())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(a: &i32, b: &i32) -> Ordering {
        a.cmp(b)
    }

    fn brute_median(mut xs: Vec<i32>) -> i32 {
        xs.sort();
        xs[xs.len() / 2]
    }

    #[test]
    fn med3_listing_branches() {
        let mut v = vec![0, 1, 2];
        let (d, s) = median_of_3(&mut v, 0, 1, 2, ord);
        assert_eq!((d.order, v[1], s.element_writes), (OrderFlag::Sorted, 1, 0));

        let mut v = vec![2, 1, 0];
        let (d, _) = median_of_3(&mut v, 0, 1, 2, ord);
        assert_eq!(d.order, OrderFlag::Reversed);
        assert_eq!(v, [0, 1, 2]);

        let mut v = vec![1, 0, 2];
        let (d, _) = median_of_3(&mut v, 0, 1, 2, ord);
        assert_eq!((d.order, v[1]), (OrderFlag::Unknown, 1));
    }

    #[test]
    fn med3_all_orderings_bounds() {
        for p in [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            let mut v = p.to_vec();
            let (_, s) = median_of_3(&mut v, 0, 1, 2, ord);
            assert_eq!(v, [0, 1, 2]);
            assert!(s.comparisons <= 3);
            assert!(s.element_writes <= 4);
        }
    }

    fn perms(n: usize) -> Vec<Vec<i32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for p in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n as i32);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn med5_certificate_over_all_permutations() {
        let mut max_c = 0;
        let mut max_w = 0;
        for p in perms(5) {
            let mut v = p.clone();
            let (d, s) = median_of_5(&mut v, [0, 1, 2, 3, 4], ord);
            assert_eq!(v[2], 3, "input {p:?}");
            let mut sorted_v = v.clone();
            sorted_v.sort();
            assert_eq!(sorted_v, [1, 2, 3, 4, 5]);
            let want = if p == [1, 2, 3, 4, 5] {
                OrderFlag::Sorted
            } else if p == [5, 4, 3, 2, 1] {
                OrderFlag::Reversed
            } else {
                OrderFlag::Unknown
            };
            assert_eq!(d.order, want, "input {p:?}");
            max_c = max_c.max(s.comparisons);
            max_w = max_w.max(s.element_writes);
        }
        assert!(max_c <= 8, "max comparisons {max_c}");
        assert!(max_w <= 6, "max writes {max_w}");
        assert_eq!(median_of_5_depth() as u64, max_c);
    }

    #[test]
    fn med5_with_ties_matches_brute_force() {
        for code in 0..3i32.pow(5) {
            let mut x = code;
            let p: Vec<i32> = (0..5)
                .map(|_| {
                    let d = x % 3;
                    x /= 3;
                    d
                })
                .collect();
            let mut v = p.clone();
            let (d, _) = median_of_5(&mut v, [0, 1, 2, 3, 4], ord);
            assert_eq!(v[2], brute_median(p.clone()));
            if d.order == OrderFlag::Sorted {
                assert!(p.windows(2).all(|w| w[0] <= w[1]));
            }
            if d.order == OrderFlag::Reversed {
                assert!(p.windows(2).all(|w| w[0] >= w[1]));
            }
        }
        let mut v = vec![2; 5];
        let (d, _) = median_of_5(&mut v, [0, 1, 2, 3, 4], ord);
        assert_eq!((v[2], d.order), (2, OrderFlag::Sorted));
    }

    #[test]
    fn ninther_picks_median_of_group_medians() {
        let mut v = vec![0, 1, 2, 4, 5, 6, 8, 9, 10];
        let (d, _) = ninther(&mut v, [0, 1, 2, 3, 4, 5, 6, 7, 8], ord);
        assert_eq!((v[4], d.order), (5, OrderFlag::Sorted));

        let mut seed = 12345u32;
        for _ in 0..500 {
            let vals: Vec<i32> = (0..9)
                .map(|_| {
                    seed = seed.wrapping_mul(1_103_515_245).wrapping_add(12345);
                    (seed >> 16) as i32 % 20
                })
                .collect();
            let meds: Vec<i32> = vals.chunks(3).map(|c| brute_median(c.to_vec())).collect();
            let mut v = vals.clone();
            ninther(&mut v, [0, 1, 2, 3, 4, 5, 6, 7, 8], ord);
            assert_eq!(v[4], brute_median(meds));
        }
    }

    #[test]
    fn fifteenth_picks_median_of_five_group_medians() {
        let mut v: Vec<i32> = (0..15).rev().collect();
        let idx: [usize; 15] = core::array::from_fn(|i| i);
        let (d, _) = fifteenth(&mut v, idx, ord);
        assert_eq!((v[7], d.order), (7, OrderFlag::Reversed));

        let mut seed = 99u32;
        for _ in 0..500 {
            let vals: Vec<i32> = (0..15)
                .map(|_| {
                    seed = seed.wrapping_mul(1_103_515_245).wrapping_add(12345);
                    (seed >> 16) as i32 % 50
                })
                .collect();
            let meds: Vec<i32> = vals.chunks(3).map(|c| brute_median(c.to_vec())).collect();
            let mut v = vals.clone();
            fifteenth(&mut v, idx, ord);
            assert_eq!(v[7], brute_median(meds));
        }
    }

    #[test]
    fn rng_arithmetic() {
        let mut r = MitigationRng::new(1);
        r.next();
        assert_eq!(r.state(), 16807);
        r.next();
        assert_eq!(r.state(), 282_475_249);
        for _ in 0..1000 {
            r.next();
            assert!((0.5..1.5).contains(&r.dran()));
            assert_eq!(r.dran2(), 1.0 + r.dran());
        }
    }

    #[test]
    fn zero_seed_is_replaced() {
        let r = MitigationRng::new(0);
        assert_ne!(r.state(), 0);
    }

    #[test]
    fn ladder_positions() {
        let cfg = SortConfig::default();
        assert_eq!(method_for(50, &cfg), PivotMethod::MedianOf3);
        assert_eq!(
            sample_positions(PivotMethod::MedianOf3, 0, 49, 1.3),
            vec![0, 24, 49]
        );
        assert_eq!(method_for(400, &cfg), PivotMethod::MedianOf5);
        assert_eq!(
            sample_positions(PivotMethod::MedianOf5, 0, 399, 1.0),
            vec![0, 100, 199, 299, 399]
        );
        let p = sample_positions(PivotMethod::MedianOf5, 0, 399, 1.4);
        assert_eq!(p, vec![0, 140, 199, 259, 399]);
        assert_eq!(method_for(10_000, &cfg), PivotMethod::Ninther);
        assert_eq!(method_for(100_000, &cfg), PivotMethod::Fifteenth);
    }

    #[test]
    fn sample_positions_stay_distinct_and_inside() {
        let methods = [
            (PivotMethod::MedianOf3, 3),
            (PivotMethod::MedianOf5, 5),
            (PivotMethod::Ninther, 9),
            (PivotMethod::Fifteenth, 15),
        ];
        let mut rng = MitigationRng::new(7);
        for &(m, min_n) in &methods {
            for n in min_n..400 {
                for _ in 0..4 {
                    rng.next();
                    let a = 3;
                    let b = a + n - 1;
                    let p = sample_positions(m, a, b, rng.dran());
                    assert!(p.windows(2).all(|w| w[0] < w[1]), "{m:?} n={n} {p:?}");
                    assert_eq!(p[0], a);
                    assert_eq!(*p.last().unwrap(), b);
                    assert_eq!(p[p.len() / 2], a + (b - a) / 2);
                }
            }
        }
    }
}

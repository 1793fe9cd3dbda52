//! Benchmark inputs: the classic adverse distributions, the reordering
//! battery, and an adaptive adversary that cooks quadratic inputs.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

/// Park–Miller multiplicative generator (a = 16807, m = 2^31).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParkMillerGen {
    zgen: u32,
}

const PM_A: u64 = 16807;
const PM_M: u64 = 1 << 31;

impl ParkMillerGen {
    /// A zero state would stay zero forever, so it is bumped to one.
    pub fn new(seed: u32) -> Self {
        ParkMillerGen {
            zgen: if seed.is_multiple_of(PM_M as u32) { 1 } else { seed },
        }
    }

    pub fn state(&self) -> u32 {
        self.zgen
    }

    pub fn next_u32(&mut self) -> u32 {
        self.zgen = ((PM_A * self.zgen as u64) % PM_M) as u32;
        self.zgen
    }

    /// Uniform in `[0, 1)`.
    pub fn gen_rand(&mut self) -> f64 {
        self.next_u32() as f64 / PM_M as f64
    }

    /// Uniform integer in `[smallest, largest]`.
    pub fn gen_range(&mut self, smallest: i64, largest: i64) -> i64 {
        (self.gen_rand() * (largest - smallest + 1) as f64) as i64 + smallest
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distribution {
    Sawtooth,
    Random,
    Stagger,
    Plateau,
    Shuffle,
    Hill,
    OrganPipes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reorder {
    Identity,
    Sorted,
    Reversed,
    FrontHalfReversed,
    BackHalfReversed,
    Dither,
    Fort,
}

impl Distribution {
    pub const ALL: [Distribution; 7] = [
        Distribution::Sawtooth,
        Distribution::Random,
        Distribution::Stagger,
        Distribution::Plateau,
        Distribution::Shuffle,
        Distribution::Hill,
        Distribution::OrganPipes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::Sawtooth => "sawtooth",
            Distribution::Random => "random",
            Distribution::Stagger => "stagger",
            Distribution::Plateau => "plateau",
            Distribution::Shuffle => "shuffle",
            Distribution::Hill => "hill",
            Distribution::OrganPipes => "organpipes",
        }
    }
}

impl Reorder {
    pub const ALL: [Reorder; 7] = [
        Reorder::Identity,
        Reorder::Sorted,
        Reorder::Reversed,
        Reorder::FrontHalfReversed,
        Reorder::BackHalfReversed,
        Reorder::Dither,
        Reorder::Fort,
    ];

    /// The six orderings of the standard battery.
    pub const BATTERY: [Reorder; 6] = [
        Reorder::Sorted,
        Reorder::Reversed,
        Reorder::FrontHalfReversed,
        Reorder::BackHalfReversed,
        Reorder::Dither,
        Reorder::Fort,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reorder::Identity => "identity",
            Reorder::Sorted => "sorted",
            Reorder::Reversed => "reversed",
            Reorder::FrontHalfReversed => "fronthalf",
            Reorder::BackHalfReversed => "backhalf",
            Reorder::Dither => "dither",
            Reorder::Fort => "fort",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownName(pub String);

impl fmt::Display for UnknownName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown name `{}`", self.0)
    }
}

impl std::error::Error for UnknownName {}

impl FromStr for Distribution {
    type Err = UnknownName;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.to_ascii_lowercase();
        Distribution::ALL
            .into_iter()
            .find(|d| d.name() == s || (s == "organ-pipes" && *d == Distribution::OrganPipes))
            .ok_or(UnknownName(s))
    }
}

impl FromStr for Reorder {
    type Err = UnknownName;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.to_ascii_lowercase();
        Reorder::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or(UnknownName(s))
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Reorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Everything needed to regenerate one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub distribution: Distribution,
    pub reorder: Reorder,
    pub n: usize,
    pub arange: u32,
    pub seed: u32,
    pub op_max_distance: u32,
    pub op_add: i64,
    pub fort_minl: usize,
}

impl GenSpec {
    pub fn new(
        distribution: Distribution,
        reorder: Reorder,
        n: usize,
        arange: u32,
        seed: u32,
    ) -> Self {
        GenSpec {
            distribution,
            reorder,
            n,
            arange,
            seed,
            op_max_distance: 200,
            op_add: 0,
            fort_minl: 2,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.arange >= 1 && self.op_max_distance >= 1 && self.fort_minl >= 2
    }
}

/// Raw distribution values, before any reordering.
pub fn distribution(spec: &GenSpec) -> Vec<i64> {
    let n = spec.n;
    let m = spec.arange.max(1) as i64;
    let mut gen = ParkMillerGen::new(spec.seed);
    match spec.distribution {
        Distribution::Sawtooth => (0..n as i64).map(|i| i % m).collect(),
        Distribution::Random => (0..n).map(|_| gen.gen_range(1, m)).collect(),
        Distribution::Stagger => {
            let nn = n as i64;
            (0..nn).map(|i| (i * m + i) % nn).collect()
        }
        Distribution::Plateau => (0..n as i64).map(|i| i.min(m)).collect(),
        Distribution::Shuffle => {
            let (mut j, mut k) = (0i64, 1i64);
            (0..n)
                .map(|_| {
                    if gen.next_u32() as i64 % m != 0 {
                        j += 2;
                        j
                    } else {
                        k += 2;
                        k
                    }
                })
                .collect()
        }
        Distribution::Hill => {
            let half = n / 2;
            (0..n)
                .map(|i| (if i < half { i } else { n - i }) as i64)
                .map(|x| x.min(m))
                .collect()
        }
        Distribution::OrganPipes => {
            organ_pipes(&mut gen, n, m, spec.op_max_distance as i64, spec.op_add)
        }
    }
}

fn organ_pipes(
    gen: &mut ParkMillerGen,
    n: usize,
    arange: i64,
    max_distance: i64,
    add: i64,
) -> Vec<i64> {
    let mut out = Vec::with_capacity(n);
    let mut v1 = gen.gen_range(1, arange) as f64;
    while out.len() < n {
        let v2 = (gen.gen_range(1, arange) + add) as f64;
        let mut dist = gen.gen_range(1, max_distance);
        let step = (v2 - v1) / dist as f64;
        while dist != 0 && out.len() < n {
            out.push(v1 as i64);
            v1 += step;
            dist -= 1;
        }
        v1 = v2;
    }
    out
}

/// Recursively reverses `v` and then each half, down to runs of `minl`.
pub fn fort<T>(v: &mut [T], minl: usize) {
    v.reverse();
    if v.len() > minl.max(2) {
        let h = (v.len() - 1) / 2 + 1;
        let (lo, hi) = v.split_at_mut(h);
        fort(lo, minl);
        fort(hi, minl);
    }
}

pub fn reorder(v: &mut [i64], kind: Reorder, fort_minl: usize) {
    let half = v.len() / 2;
    match kind {
        Reorder::Identity => {}
        Reorder::Sorted => v.sort_unstable(),
        Reorder::Reversed => {
            v.sort_unstable();
            v.reverse();
        }
        Reorder::FrontHalfReversed => {
            v.sort_unstable();
            v[..half].reverse();
        }
        Reorder::BackHalfReversed => {
            v.sort_unstable();
            v[half..].reverse();
        }
        Reorder::Dither => {
            for (i, x) in v.iter_mut().enumerate() {
                *x += (i % 5) as i64;
            }
        }
        Reorder::Fort => {
            v.sort_unstable();
            fort(v, fort_minl);
        }
    }
}

/// The distribution followed by the reordering; a pure function of `spec`.
pub fn generate(spec: &GenSpec) -> Vec<i64> {
    let mut v = distribution(spec);
    reorder(&mut v, spec.reorder, spec.fort_minl);
    v
}

/// Uniformly shuffled `0..n` (Fisher–Yates driven by Park–Miller).
pub fn random_permutation(n: usize, seed: u32) -> Vec<i64> {
    let mut gen = ParkMillerGen::new(seed);
    let mut v: Vec<i64> = (0..n as i64).collect();
    for i in (1..n).rev() {
        let j = gen.gen_range(0, i as i64) as usize;
        v.swap(i, j);
    }
    v
}

struct Adversary {
    val: Vec<usize>,
    gas: usize,
    solid: usize,
    candidate: usize,
    comparisons: u64,
}

impl Adversary {
    fn freeze(&mut self, x: usize) {
        self.val[x] = self.solid;
        self.solid += 1;
    }

    fn cmp(&mut self, x: usize, y: usize) -> Ordering {
        self.comparisons += 1;
        if self.val[x] == self.gas && self.val[y] == self.gas {
            if x == self.candidate {
                self.freeze(x);
            } else {
                self.freeze(y);
            }
        }
        if self.val[x] == self.gas {
            self.candidate = x;
        } else if self.val[y] == self.gas {
            self.candidate = y;
        }
        self.val[x].cmp(&self.val[y])
    }
}

/// Input cooked by the gas adversary, plus the comparisons of the live run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KillerInput {
    pub values: Vec<i64>,
    pub live_comparisons: u64,
}

/// Runs `target` once against the adaptive gas comparator and returns the
/// concrete input it settled on.
///
/// `target` sorts the items `0..n` through the comparator it is handed.
/// Replaying the returned values against the same deterministic target
/// reproduces the live run comparison for comparison; still-liquid items end
/// up equal to each other and above every frozen one.
pub fn killer_input<S>(n: usize, target: S) -> KillerInput
where
    S: FnOnce(&mut [usize], &mut dyn FnMut(&usize, &usize) -> Ordering),
{
    let adv = RefCell::new(Adversary {
        val: vec![n; n],
        gas: n,
        solid: 0,
        candidate: 0,
        comparisons: 0,
    });
    let mut items: Vec<usize> = (0..n).collect();
    let mut cmp = |x: &usize, y: &usize| adv.borrow_mut().cmp(*x, *y);
    target(&mut items, &mut cmp);
    let adv = adv.into_inner();
    KillerInput {
        values: adv.val.iter().map(|&x| x as i64).collect(),
        live_comparisons: adv.comparisons,
    }
}

/// Writes one decimal value per line.
pub fn write_column<W: Write>(mut w: W, values: &[i64]) -> io::Result<()> {
    for x in values {
        writeln!(w, "{x}")?;
    }
    w.flush()
}

/// Reads a column written by [`write_column`]; blank lines are skipped.
pub fn read_column<R: BufRead>(r: R) -> io::Result<Vec<i64>> {
    let mut out = Vec::new();
    for (no, line) in r.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let x = t.parse().map_err(|e| {
            io::Error::new(
                io::ErrorKind::InvalidData,
                format!("line {}: `{t}`: {e}", no + 1),
            )
        })?;
        out.push(x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pivot::MitigationRng;

    fn spec(d: Distribution, n: usize, arange: u32) -> GenSpec {
        GenSpec::new(d, Reorder::Identity, n, arange, 1)
    }

    #[test]
    fn hill_examples() {
        assert_eq!(
            generate(&spec(Distribution::Hill, 6, 100)),
            [0, 1, 2, 3, 2, 1]
        );
        assert_eq!(
            generate(&spec(Distribution::Hill, 6, 2)),
            [0, 1, 2, 2, 2, 1]
        );
    }

    #[test]
    fn bentley_formulas() {
        assert_eq!(
            generate(&spec(Distribution::Sawtooth, 7, 3)),
            [0, 1, 2, 0, 1, 2, 0]
        );
        assert_eq!(
            generate(&spec(Distribution::Plateau, 6, 3)),
            [0, 1, 2, 3, 3, 3]
        );
        assert_eq!(
            generate(&spec(Distribution::Stagger, 5, 2)),
            [0, 3, 1, 4, 2]
        );
    }

    #[test]
    fn fort_examples() {
        let mut v = [1, 2, 3, 4];
        fort(&mut v, 2);
        assert_eq!(v, [3, 4, 1, 2]);
        let mut v = [1, 2, 3, 4, 5, 6, 7, 8];
        fort(&mut v, 2);
        assert_eq!(v, [6, 5, 8, 7, 2, 1, 4, 3]);
    }

    #[test]
    fn reorderings() {
        let base = GenSpec::new(Distribution::Random, Reorder::Identity, 10, 50, 9);
        let raw = generate(&base);
        let mut sorted = raw.clone();
        sorted.sort();
        let with = |r| {
            generate(&GenSpec {
                reorder: r,
                ..base.clone()
            })
        };
        assert_eq!(with(Reorder::Sorted), sorted);
        let rev: Vec<i64> = sorted.iter().rev().copied().collect();
        assert_eq!(with(Reorder::Reversed), rev);
        let front = with(Reorder::FrontHalfReversed);
        assert!(
            front[..5].windows(2).all(|w| w[0] >= w[1])
                && front[5..].windows(2).all(|w| w[0] <= w[1])
        );
        let back = with(Reorder::BackHalfReversed);
        assert!(
            back[..5].windows(2).all(|w| w[0] <= w[1])
                && back[5..].windows(2).all(|w| w[0] >= w[1])
        );
        let dither = with(Reorder::Dither);
        assert!(dither
            .iter()
            .zip(&raw)
            .enumerate()
            .all(|(i, (d, r))| d - r == (i % 5) as i64));
        let mut f = with(Reorder::Fort);
        f.sort();
        assert_eq!(f, sorted);
    }

    #[test]
    fn range_laws() {
        for d in Distribution::ALL {
            for seed in [1, 77, 12345] {
                let s = GenSpec {
                    op_add: 7,
                    ..GenSpec::new(d, Reorder::Identity, 3000, 500, seed)
                };
                let v = generate(&s);
                assert_eq!(v.len(), 3000);
                match d {
                    Distribution::Sawtooth | Distribution::Plateau | Distribution::Hill => {
                        assert!(v.iter().all(|&x| (0..=500).contains(&x)), "{d}")
                    }
                    Distribution::Random => assert!(v.iter().all(|&x| (1..=500).contains(&x))),
                    Distribution::OrganPipes => {
                        assert!(v.iter().all(|&x| (1..=507).contains(&x)), "{v:?}")
                    }
                    _ => {}
                }
                assert_eq!(v, generate(&s));
            }
        }
    }

    #[test]
    fn generator_matches_mitigation_arithmetic() {
        let mut g = ParkMillerGen::new(1);
        assert_eq!(g.next_u32(), 16807);
        assert_eq!(g.next_u32(), 282_475_249);
        let mut g = ParkMillerGen::new(4242);
        let mut m = MitigationRng::new(4242);
        for _ in 0..1000 {
            m.next();
            assert_eq!(g.next_u32(), m.state());
        }
        assert_eq!(ParkMillerGen::new(0).state(), 1);
    }

    #[test]
    fn permutation_is_a_permutation() {
        let mut p = random_permutation(1000, 5);
        assert_ne!(p, (0..1000).collect::<Vec<_>>());
        p.sort();
        assert_eq!(p, (0..1000).collect::<Vec<_>>());
    }

    fn first_pivot_quicksort(v: &mut [usize], cmp: &mut dyn FnMut(&usize, &usize) -> Ordering) {
        if v.len() < 2 {
            return;
        }
        let mut store = 1;
        for i in 1..v.len() {
            if cmp(&v[i], &v[0]) == Ordering::Less {
                v.swap(i, store);
                store += 1;
            }
        }
        v.swap(0, store - 1);
        let (lo, hi) = v.split_at_mut(store - 1);
        first_pivot_quicksort(lo, cmp);
        first_pivot_quicksort(&mut hi[1..], cmp);
    }

    #[test]
    fn killer_replays_quadratic_on_first_pivot() {
        let n = 256;
        let k = killer_input(n, first_pivot_quicksort);
        let mut count = 0u64;
        let mut idx: Vec<usize> = (0..n).collect();
        let vals = k.values.clone();
        first_pivot_quicksort(&mut idx, &mut |x: &usize, y: &usize| {
            count += 1;
            vals[*x].cmp(&vals[*y])
        });
        assert_eq!(count, k.live_comparisons);
        assert!(count >= (n * n / 8) as u64, "{count}");
    }

    #[test]
    fn killer_against_library_sort_of_two() {
        let k = killer_input(2, |v, cmp| v.sort_by(|a, b| cmp(a, b)));
        assert_eq!(k.live_comparisons, 1);
    }

    #[test]
    fn column_round_trip() {
        let v = vec![3, -1, 40, 0];
        let mut out = Vec::new();
        write_column(&mut out, &v).unwrap();
        assert_eq!(String::from_utf8(out.clone()).unwrap(), "3\n-1\n40\n0\n");
        assert_eq!(read_column(&out[..]).unwrap(), v);
        assert!(read_column(&b"1\nx\n"[..]).is_err());
    }
}

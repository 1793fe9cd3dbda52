//! Driver, configuration and retained temporary storage.

use std::cmp::Ordering;

use thiserror::Error;

use crate::access::{Ctx, Observer};
use crate::instrument::{SortStats, StageBounds, Trace};
use crate::pivot::{self, MitigationRng};
use crate::smallsort::insertion_sort_in;
use crate::stage::partition_stage;

/// Tuning knobs of the sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortConfig {
    /// Ranges of at most this many elements go to insertion sort.
    pub insertion_threshold: usize,
    /// Below this size the pivot is a median of three.
    pub medof3_max_n: usize,
    /// Below this size the pivot is a median of five.
    pub medof5_max_n: usize,
    /// Below this size the pivot is a ninther; above it a fifteenth.
    pub ninther_max_n: usize,
    /// Misplaced elements the reversed-input handler tolerates per side.
    pub reverse_tolerance: u32,
    /// Jitter interior sample positions with the sorter's generator.
    pub mitigation_enabled: bool,
    /// Element size from which sorting through position handles pays off.
    pub late_swap_byte_threshold: usize,
    /// Use median of three (instead of five) on small ranges.
    pub medof3_small_enabled: bool,
}

impl Default for SortConfig {
    fn default() -> Self {
        SortConfig {
            insertion_threshold: 16,
            medof3_max_n: 70,
            medof5_max_n: 600,
            ninther_max_n: 60_000,
            reverse_tolerance: 3,
            mitigation_enabled: true,
            late_swap_byte_threshold: 320,
            medof3_small_enabled: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("insertion_threshold must be at least 3 (got {0})")]
    InsertionThreshold(usize),
    #[error(
        "size thresholds must be strictly increasing: insertion {insertion} < medof3 {medof3} < medof5 {medof5} < ninther {ninther}"
    )]
    Thresholds {
        insertion: usize,
        medof3: usize,
        medof5: usize,
        ninther: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SortError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot allocate a temporary buffer of {0} elements")]
    Allocation(usize),
}

impl SortConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.insertion_threshold < 3 {
            return Err(ConfigError::InsertionThreshold(self.insertion_threshold));
        }
        if !(self.insertion_threshold < self.medof3_max_n
            && self.medof3_max_n < self.medof5_max_n
            && self.medof5_max_n < self.ninther_max_n)
        {
            return Err(ConfigError::Thresholds {
                insertion: self.insertion_threshold,
                medof3: self.medof3_max_n,
                medof5: self.medof5_max_n,
                ninther: self.ninther_max_n,
            });
        }
        Ok(())
    }
}

/// Buffer for pivot-equal elements, sized to half the largest array sorted
/// since the last release.
#[derive(Debug)]
pub struct TempStore<T> {
    buf: Vec<T>,
    capacity: usize,
    allocations: u64,
}

impl<T> Default for TempStore<T> {
    fn default() -> Self {
        TempStore {
            buf: Vec::new(),
            capacity: 0,
            allocations: 0,
        }
    }
}

impl<T> TempStore<T> {
    fn ensure(&mut self, n: usize) -> Result<(), SortError> {
        let need = n.div_ceil(2);
        if need > self.capacity {
            let mut fresh = Vec::new();
            fresh
                .try_reserve_exact(need)
                .map_err(|_| SortError::Allocation(need))?;
            self.buf = fresh;
            self.capacity = need;
            self.allocations += 1;
        }
        Ok(())
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn allocations(&self) -> u64 {
        self.allocations
    }

    pub fn fill(&self) -> usize {
        self.buf.len()
    }

    fn release(&mut self) {
        self.buf = Vec::new();
        self.capacity = 0;
    }
}

/// A reusable sorter instance.
///
/// Keeps its temporary buffer and mitigation generator between calls;
/// [`Sorter::free_temp_storage`] releases the buffer.
#[derive(Debug)]
pub struct Sorter<T> {
    config: SortConfig,
    temp: TempStore<T>,
    rng: MitigationRng,
}

struct Hooks<'h, T> {
    trace: Option<&'h mut Trace>,
    observer: Option<Observer<'h, T>>,
    slot_checks: bool,
}

impl<T: Clone> Sorter<T> {
    /// Sorter seeded from the wall clock.
    pub fn new(config: SortConfig) -> Result<Self, ConfigError> {
        Self::with_seed(config, 0)
    }

    /// Sorter with a fixed generator seed (zero means wall clock).
    pub fn with_seed(config: SortConfig, seed: u32) -> Result<Self, ConfigError> {
        config.validate()?;
        Ok(Sorter {
            config,
            temp: TempStore::default(),
            rng: MitigationRng::new(seed),
        })
    }

    pub fn config(&self) -> &SortConfig {
        &self.config
    }

    pub fn rng(&self) -> &MitigationRng {
        &self.rng
    }

    pub fn temp_store(&self) -> &TempStore<T> {
        &self.temp
    }

    /// Releases the retained buffer; the next sort allocates again.
    pub fn free_temp_storage(&mut self) {
        self.temp.release();
    }

    pub fn sort_by<F>(&mut self, v: &mut [T], cmp: F) -> Result<SortStats, SortError>
    where
        F: FnMut(&T, &T) -> Ordering,
    {
        self.run(
            v,
            cmp,
            Hooks {
                trace: None,
                observer: None,
                slot_checks: false,
            },
        )
    }

    pub fn sort(&mut self, v: &mut [T]) -> Result<SortStats, SortError>
    where
        T: Ord,
    {
        self.sort_by(v, T::cmp)
    }

    /// Like [`Sorter::sort_by`], also recording every event into `trace`.
    pub fn sort_traced<F>(
        &mut self,
        v: &mut [T],
        cmp: F,
        trace: &mut Trace,
    ) -> Result<SortStats, SortError>
    where
        F: FnMut(&T, &T) -> Ordering,
    {
        self.run(
            v,
            cmp,
            Hooks {
                trace: Some(trace),
                observer: None,
                slot_checks: false,
            },
        )
    }

    /// Calls `observer` with the whole array at the end of every stage.
    pub fn sort_observed<F>(
        &mut self,
        v: &mut [T],
        cmp: F,
        observer: &mut dyn FnMut(&[T], StageBounds),
    ) -> Result<SortStats, SortError>
    where
        F: FnMut(&T, &T) -> Ordering,
    {
        self.run(
            v,
            cmp,
            Hooks {
                trace: None,
                observer: Some(observer),
                slot_checks: false,
            },
        )
    }

    /// Sorts while asserting after every move that exactly two slots are
    /// empty besides those whose elements wait in the buffer.
    pub fn sort_slot_checked<F>(&mut self, v: &mut [T], cmp: F) -> Result<SortStats, SortError>
    where
        F: FnMut(&T, &T) -> Ordering,
    {
        self.run(
            v,
            cmp,
            Hooks {
                trace: None,
                observer: None,
                slot_checks: true,
            },
        )
    }

    fn run<'h, F>(
        &mut self,
        v: &'h mut [T],
        cmp: F,
        hooks: Hooks<'h, T>,
    ) -> Result<SortStats, SortError>
    where
        F: FnMut(&T, &T) -> Ordering,
    {
        let n = v.len();
        if n < 2 {
            return Ok(SortStats::default());
        }
        self.temp.ensure(n)?;
        let dran = if self.config.mitigation_enabled {
            self.rng.next();
            self.rng.dran()
        } else {
            1.0
        };
        let mut ctx = Ctx::new(v, cmp)
            .with_trace(hooks.trace)
            .with_observer(hooks.observer)
            .with_slot_checks(hooks.slot_checks);
        let mut driver = Driver {
            config: &self.config,
            dran,
            buf: &mut self.temp.buf,
            buf_cap: self.temp.capacity,
        };
        driver.quicksort(&mut ctx, 0, n - 1, 1);
        Ok(ctx.into_stats())
    }
}

struct Driver<'d, T> {
    config: &'d SortConfig,
    dran: f64,
    buf: &'d mut Vec<T>,
    buf_cap: usize,
}

impl<T: Clone> Driver<'_, T> {
    /// Sorts `v[a..=b]`, recursing into the smaller side and looping on the
    /// larger one.
    fn quicksort<F>(
        &mut self,
        ctx: &mut Ctx<'_, T, F>,
        mut a: usize,
        mut b: usize,
        mut depth: usize,
    ) where
        F: FnMut(&T, &T) -> Ordering,
    {
        loop {
            if depth > ctx.stats.max_depth {
                ctx.stats.max_depth = depth;
            }
            let n = b - a + 1;
            if n <= self.config.insertion_threshold {
                if n > 1 {
                    insertion_sort_in(ctx, a, b);
                }
                return;
            }
            ctx.stats.stages += 1;
            let decision = pivot::select_in(ctx, a, b, self.config, self.dran);
            let bounds = partition_stage(
                ctx,
                a,
                b,
                decision,
                self.config.reverse_tolerance,
                self.buf,
                self.buf_cap,
            );
            let left = (bounds.a, bounds.lo_end);
            let right = (bounds.hi_start, bounds.end);
            let (small, large) = if left.1 - left.0 <= right.1 - right.0 {
                (left, right)
            } else {
                (right, left)
            };
            if small.1 > small.0 + 1 {
                self.quicksort(ctx, small.0, small.1 - 1, depth + 1);
            }
            if large.1 <= large.0 + 1 {
                return;
            }
            a = large.0;
            b = large.1 - 1;
            depth += 1;
        }
    }
}

/// Sorts with a throwaway clock-seeded sorter and the default configuration.
pub fn sort<T: Ord + Clone>(v: &mut [T]) -> SortStats {
    Sorter::new(SortConfig::default())
        .expect("default configuration is valid")
        .sort(v)
        .expect("temporary buffer allocation failed")
}

/// Sorts `v` by `cmp` with a throwaway clock-seeded sorter.
pub fn sort_with_stats<T, F>(
    v: &mut [T],
    cmp: F,
    config: &SortConfig,
) -> Result<SortStats, SortError>
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    Sorter::new(config.clone())?.sort_by(v, cmp)
}

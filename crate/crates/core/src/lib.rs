//! Triple State Quicksort: a three-way quicksort that moves elements with
//! single copies instead of swaps, keeping two array slots empty during
//! every partition stage.
//!
//! ```
//! let mut v = vec![5, 3, 5, 1, 5];
//! let stats = tristate::sort(&mut v);
//! assert_eq!(v, [1, 3, 5, 5, 5]);
//! assert!(stats.comparisons > 0);
//! ```

mod access;
pub mod analysis;
pub mod baselines;
pub mod bigelem;
pub mod datagen;
pub mod handlers;
pub mod instrument;
pub mod pivot;
pub mod smallsort;
pub mod sorter;
pub mod stage;

pub use instrument::{SortStats, StageBounds, Trace, TraceEvent};
pub use pivot::{MitigationRng, OrderFlag, PivotDecision};
pub use sorter::{sort, sort_with_stats, ConfigError, SortConfig, SortError, Sorter};
pub use stage::StateId;

//! Count-based benchmark harness around the `tristate` crate: grid runs
//! with CSV/JSON output, a self-check suite and closed-form predictions.

pub mod grid;
pub mod predict;
pub mod record;
pub mod verify;

pub use grid::{run_grid, GridError, GridSpec, Preset};
pub use record::{BenchRecord, CSV_HEADER};

//! One benchmark row and its CSV / JSON encodings.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use tristate::SortStats;

pub const CSV_HEADER: &str =
    "algorithm,distribution,reorder,n,arange,seed,comparisons,element_writes,virtual_swaps,temp_high_water,max_depth,wall_ns";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub algorithm: String,
    pub distribution: String,
    pub reorder: String,
    pub n: usize,
    pub arange: u64,
    pub seed: u32,
    pub comparisons: u64,
    pub element_writes: u64,
    pub virtual_swaps: f64,
    pub temp_high_water: usize,
    pub max_depth: usize,
    /// Informational only; never compared.
    pub wall_ns: u64,
}

impl BenchRecord {
    #[allow(clippy::too_many_arguments)]
    pub fn from_stats(
        algorithm: &str,
        distribution: &str,
        reorder: &str,
        n: usize,
        arange: u64,
        seed: u32,
        stats: &SortStats,
        wall_ns: u64,
    ) -> Self {
        BenchRecord {
            algorithm: algorithm.to_owned(),
            distribution: distribution.to_owned(),
            reorder: reorder.to_owned(),
            n,
            arange,
            seed,
            comparisons: stats.comparisons,
            element_writes: stats.element_writes,
            virtual_swaps: stats.virtual_swaps(),
            temp_high_water: stats.temp_high_water,
            max_depth: stats.max_depth,
            wall_ns,
        }
    }
}

pub fn write_csv<W: Write>(w: W, rows: &[BenchRecord]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    if rows.is_empty() {
        out.write_record(CSV_HEADER.split(','))?;
    }
    for r in rows {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> csv::Result<Vec<BenchRecord>> {
    csv::Reader::from_reader(r).deserialize().collect()
}

pub fn write_json<W: Write>(w: W, rows: &[BenchRecord]) -> serde_json::Result<()> {
    serde_json::to_writer_pretty(w, rows)
}

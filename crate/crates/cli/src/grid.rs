//! Benchmark grids: enumeration, presets and (parallel) execution.

use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;
use tristate::baselines::Algorithm;
use tristate::datagen::{self, Distribution, GenSpec, Reorder};
use tristate::SortConfig;

use crate::record::BenchRecord;

/// Upper bound on the total number of elements sorted by one grid.
pub const ELEMENT_BUDGET: u128 = 4_000_000_000;

pub const DESK_SIZES: [usize; 4] = [1_000, 10_000, 100_000, 500_000];
pub const FULL_SIZE: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Every distribution under the six battery orderings.
    Figures,
    /// The six adverse inputs as generated, at two million elements.
    Adverse2m,
    /// Random input at fixed size while the value range grows.
    RangeSweep,
    /// Many tiny arrays with few distinct values.
    Overhead,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Figures,
        Preset::Adverse2m,
        Preset::RangeSweep,
        Preset::Overhead,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Figures => "figures",
            Preset::Adverse2m => "adverse2m",
            Preset::RangeSweep => "range-sweep",
            Preset::Overhead => "overhead",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("grid would sort {elements} elements in total (budget {budget}); lower --n or --seeds, or pick fewer cells")]
    OverBudget { elements: u128, budget: u128 },
    #[error("{0} produced an unsorted or altered output on {1}")]
    Verification(String, String),
    #[error("invalid generator parameters: {0}")]
    BadSpec(String),
    #[error("empty grid: every axis needs at least one value")]
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub algos: Vec<Algorithm>,
    pub dists: Vec<Distribution>,
    pub reorders: Vec<Reorder>,
    pub sizes: Vec<usize>,
    pub aranges: Vec<u32>,
    pub seeds: u32,
    pub seeds_base: u32,
    pub mitigation: bool,
    pub config: SortConfig,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            algos: Algorithm::ALL.to_vec(),
            dists: vec![Distribution::Random],
            reorders: vec![Reorder::Identity],
            sizes: vec![1_000],
            aranges: vec![500],
            seeds: 1,
            seeds_base: 1,
            mitigation: true,
            config: SortConfig::default(),
        }
    }
}

impl GridSpec {
    /// Grid of a preset; `full` adds the two-million-element size where it
    /// applies.
    pub fn preset(p: Preset, full: bool) -> Self {
        let base = GridSpec::default();
        match p {
            Preset::Figures => {
                let mut sizes = DESK_SIZES.to_vec();
                if full {
                    sizes.push(FULL_SIZE);
                }
                GridSpec {
                    dists: Distribution::ALL.to_vec(),
                    reorders: Reorder::BATTERY.to_vec(),
                    sizes,
                    ..base
                }
            }
            Preset::Adverse2m => GridSpec {
                dists: vec![
                    Distribution::Sawtooth,
                    Distribution::Random,
                    Distribution::Stagger,
                    Distribution::Plateau,
                    Distribution::Shuffle,
                    Distribution::Hill,
                ],
                sizes: vec![FULL_SIZE],
                aranges: vec![9_000],
                ..base
            },
            Preset::RangeSweep => GridSpec {
                sizes: vec![100_000],
                aranges: vec![
                    100,
                    1_000,
                    10_000,
                    100_000,
                    1_000_000,
                    10_000_000,
                    100_000_000,
                    1_000_000_000,
                    2_000_000_000,
                ],
                ..base
            },
            Preset::Overhead => GridSpec {
                sizes: vec![50],
                aranges: vec![15],
                seeds: 10_000,
                ..base
            },
        }
    }

    fn gen_spec(&self, d: Distribution, r: Reorder, n: usize, arange: u32, seed: u32) -> GenSpec {
        GenSpec::new(d, r, n, arange, seed)
    }

    /// Cells in emission order: distribution, reordering, size, range,
    /// algorithm, then seed.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for &d in &self.dists {
            for &r in &self.reorders {
                for &n in &self.sizes {
                    for &arange in &self.aranges {
                        for &algo in &self.algos {
                            for k in 0..self.seeds {
                                let seed = self.seeds_base.wrapping_add(k);
                                out.push(Cell {
                                    algo,
                                    spec: self.gen_spec(d, r, n, arange, seed),
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn total_elements(&self) -> u128 {
        let per_size: u128 = self.sizes.iter().map(|&n| n as u128).sum();
        per_size
            * self.dists.len() as u128
            * self.reorders.len() as u128
            * self.aranges.len() as u128
            * self.algos.len() as u128
            * self.seeds as u128
    }

    pub fn check(&self) -> Result<(), GridError> {
        if self.algos.is_empty()
            || self.dists.is_empty()
            || self.reorders.is_empty()
            || self.sizes.is_empty()
            || self.aranges.is_empty()
            || self.seeds == 0
        {
            return Err(GridError::Empty);
        }
        if self.aranges.contains(&0) {
            return Err(GridError::BadSpec("arange must be at least 1".into()));
        }
        self.config
            .validate()
            .map_err(|e| GridError::BadSpec(e.to_string()))?;
        let elements = self.total_elements();
        if elements > ELEMENT_BUDGET {
            return Err(GridError::OverBudget {
                elements,
                budget: ELEMENT_BUDGET,
            });
        }
        Ok(())
    }

    fn sort_config(&self) -> SortConfig {
        SortConfig {
            mitigation_enabled: self.mitigation,
            ..self.config.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub algo: Algorithm,
    pub spec: GenSpec,
}

/// Generates the input of `cell`, sorts it, checks the output against a
/// reference sort and returns the row.
pub fn run_cell(cell: &Cell, config: &SortConfig) -> Result<BenchRecord, GridError> {
    let input = datagen::generate(&cell.spec);
    let mut v = input.clone();
    let start = Instant::now();
    let stats = cell.algo.run(&mut v, i64::cmp, config, cell.spec.seed);
    let wall_ns = start.elapsed().as_nanos() as u64;
    let mut want = input;
    want.sort_unstable();
    if v != want {
        return Err(GridError::Verification(
            cell.algo.name().into(),
            describe(&cell.spec),
        ));
    }
    Ok(BenchRecord::from_stats(
        cell.algo.name(),
        cell.spec.distribution.name(),
        cell.spec.reorder.name(),
        cell.spec.n,
        cell.spec.arange as u64,
        cell.spec.seed,
        &stats,
        wall_ns,
    ))
}

fn describe(s: &GenSpec) -> String {
    format!(
        "{}/{} n={} arange={} seed={}",
        s.distribution, s.reorder, s.n, s.arange, s.seed
    )
}

/// Runs every cell (in parallel) and returns rows in grid order.
pub fn run_grid(grid: &GridSpec) -> Result<Vec<BenchRecord>, GridError> {
    grid.check()?;
    let config = grid.sort_config();
    grid.cells()
        .par_iter()
        .map(|c| run_cell(c, &config))
        .collect()
}

/// The input of the first cell, for `--emit-input`.
pub fn first_input(grid: &GridSpec) -> Result<Vec<i64>, GridError> {
    let d = *grid.dists.first().ok_or(GridError::Empty)?;
    let r = *grid.reorders.first().ok_or(GridError::Empty)?;
    let n = *grid.sizes.first().ok_or(GridError::Empty)?;
    let arange = *grid.aranges.first().ok_or(GridError::Empty)?;
    Ok(datagen::generate(&grid.gen_spec(
        d,
        r,
        n,
        arange,
        grid.seeds_base,
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_and_order() {
        let g = GridSpec {
            algos: vec![Algorithm::TriState, Algorithm::Classic],
            seeds: 5,
            ..GridSpec::default()
        };
        let rows = run_grid(&g).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(rows[..5].iter().all(|r| r.algorithm == "tristate"));
        assert_eq!(
            rows.iter().map(|r| r.seed).take(5).collect::<Vec<_>>(),
            [1, 2, 3, 4, 5]
        );
    }

    #[test]
    fn figures_preset_shape() {
        let g = GridSpec::preset(Preset::Figures, false);
        assert_eq!(g.dists.len() * g.reorders.len(), 42);
        assert!(!g.sizes.contains(&FULL_SIZE));
        assert!(GridSpec::preset(Preset::Figures, true)
            .sizes
            .contains(&FULL_SIZE));
        for p in Preset::ALL {
            GridSpec::preset(p, false).check().unwrap();
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = GridSpec {
            sizes: vec![1_000_000_000],
            seeds: 10,
            ..GridSpec::default()
        };
        assert!(matches!(g.check(), Err(GridError::OverBudget { .. })));
    }

    #[test]
    fn rows_are_deterministic_apart_from_timing() {
        let g = GridSpec {
            dists: Distribution::ALL.to_vec(),
            sizes: vec![2_000],
            seeds: 2,
            ..GridSpec::default()
        };
        let strip = |mut rows: Vec<BenchRecord>| {
            rows.iter_mut().for_each(|r| r.wall_ns = 0);
            rows
        };
        assert_eq!(strip(run_grid(&g).unwrap()), strip(run_grid(&g).unwrap()));
    }

    #[test]
    fn emits_hill_input() {
        let g = GridSpec {
            dists: vec![Distribution::Hill],
            sizes: vec![6],
            aranges: vec![100],
            ..GridSpec::default()
        };
        assert_eq!(first_input(&g).unwrap(), [0, 1, 2, 3, 2, 1]);
    }
}

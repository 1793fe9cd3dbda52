//! Self-check suite behind `tsq-bench verify`.

use tristate::analysis;
use tristate::baselines::{first_pivot_qsort, Algorithm};
use tristate::datagen::killer_input;
use tristate::pivot::median_of_5;
use tristate::{SortConfig, Sorter};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const KILLER_N: usize = 4096;
pub const KILLER_SEEDS: u32 = 20;

/// Next lexicographic permutation in place; false after the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let n = v.len();
    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n)
        .rev()
        .find(|&j| v[j] > v[i])
        .expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn sorts_correctly(algo: Algorithm, input: &[i32], config: &SortConfig) -> bool {
    let mut v = input.to_vec();
    algo.run(&mut v, i32::cmp, config, 1);
    let mut want = input.to_vec();
    want.sort_unstable();
    v == want
}

/// Every permutation of `1..=8` through every registered algorithm.
pub fn exhaustive_permutations(config: &SortConfig) -> Check {
    let mut failures = Vec::new();
    let mut cases = 0u64;
    for n in 0..=8 {
        let mut p: Vec<i32> = (1..=n).collect();
        loop {
            for algo in Algorithm::ALL {
                cases += 1;
                if !sorts_correctly(algo, &p, config) && failures.len() < 5 {
                    failures.push(format!("{algo} {p:?}"));
                }
            }
            if !next_permutation(&mut p) {
                break;
            }
        }
    }
    Check {
        name: "permutations up to 8",
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{cases} sorts")
        } else {
            failures.join("; ")
        },
    }
}

/// Every word of length up to 8 over a three-letter alphabet.
pub fn exhaustive_ternary(config: &SortConfig) -> Check {
    let mut failures = Vec::new();
    let mut cases = 0u64;
    for n in 0..=8u32 {
        for code in 0..3u32.pow(n) {
            let mut x = code;
            let input: Vec<i32> = (0..n)
                .map(|_| {
                    let d = (x % 3) as i32;
                    x /= 3;
                    d
                })
                .collect();
            for algo in Algorithm::ALL {
                cases += 1;
                if !sorts_correctly(algo, &input, config) && failures.len() < 5 {
                    failures.push(format!("{algo} {input:?}"));
                }
            }
        }
    }
    Check {
        name: "ternary multisets up to 8",
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{cases} sorts")
        } else {
            failures.join("; ")
        },
    }
}

/// Worst-case comparisons and writes of the median-of-five network over all
/// orderings of five distinct values, plus whether every median was right.
pub fn median_of_5_worst() -> (u64, u64, bool) {
    let mut p = [1, 2, 3, 4, 5];
    let (mut cmps, mut writes, mut correct) = (0, 0, true);
    loop {
        let mut v = p;
        let (d, s) = median_of_5(&mut v, [0, 1, 2, 3, 4], i32::cmp);
        correct &= d.pi == 2 && v[2] == 3;
        let mut sorted = v;
        sorted.sort_unstable();
        correct &= sorted == [1, 2, 3, 4, 5];
        cmps = cmps.max(s.comparisons);
        writes = writes.max(s.element_writes);
        if !next_permutation(&mut p) {
            break;
        }
    }
    (cmps, writes, correct)
}

pub fn median_of_5_certificate() -> Check {
    let (cmps, writes, correct) = median_of_5_worst();
    Check {
        name: "median-of-5 certificate",
        passed: correct && cmps <= 8 && writes <= 6,
        detail: format!(
            "worst case {cmps} comparisons, {writes} writes, medians correct: {correct}"
        ),
    }
}

/// Largest relative gap between the iterated recurrence and the closed form
/// over `2..=max_n`.
pub fn recurrence_gap(max_n: u64) -> f64 {
    let table = analysis::recurrence_table(max_n);
    (2..=max_n)
        .map(|n| {
            let exact = analysis::predict_swaps_tsq_exact(n);
            ((table[n as usize] - exact) / exact).abs()
        })
        .fold(0.0, f64::max)
}

pub fn predictor_agreement() -> Check {
    let gap = recurrence_gap(10_000);
    Check {
        name: "recurrence vs closed form",
        passed: gap <= 1e-9,
        detail: format!("max relative gap {gap:.3e} over n in [2, 10000]"),
    }
}

/// Comparisons the first-element-pivot quicksort needs on its own cooked
/// killer input of size `n`.
pub fn first_pivot_killer_comparisons(n: usize) -> u64 {
    let k = killer_input(n, |v, cmp| {
        first_pivot_qsort(v, |a, b| cmp(a, b));
    });
    let mut v = k.values;
    first_pivot_qsort(&mut v, i64::cmp).comparisons
}

/// Input cooked by the gas adversary against the deterministic
/// (mitigation-off) sorter with `config`.
pub fn tristate_killer_input(n: usize, config: &SortConfig) -> Vec<i64> {
    let off = SortConfig {
        mitigation_enabled: false,
        ..config.clone()
    };
    killer_input(n, |v, cmp| {
        Sorter::with_seed(off, 1)
            .expect("valid configuration")
            .sort_by(v, |a, b| cmp(a, b))
            .expect("buffer allocation");
    })
    .values
}

/// Comparisons of the sorter with `config`, for each seed, on `input`.
pub fn replay_comparisons(
    input: &[i64],
    config: &SortConfig,
    seeds: impl Iterator<Item = u32>,
) -> Vec<u64> {
    seeds
        .map(|seed| {
            let mut v = input.to_vec();
            Sorter::with_seed(config.clone(), seed)
                .expect("valid configuration")
                .sort(&mut v)
                .expect("buffer")
                .comparisons
        })
        .collect()
}

pub fn killer_bound(n: usize) -> f64 {
    64.0 * n as f64 * (n as f64).log2()
}

pub fn killer_checks(config: &SortConfig) -> Vec<Check> {
    let n = KILLER_N;
    let fixed = first_pivot_killer_comparisons(n);
    let quad = (n * n / 8) as u64;
    let input = tristate_killer_input(n, config);
    let seeds = (0..KILLER_SEEDS).map(|k| 1 + k.wrapping_mul(2_654_435_761) % 2_147_483_646);
    let runs = replay_comparisons(&input, config, seeds);
    let worst = runs.iter().copied().max().unwrap_or(0);
    let bound = killer_bound(n);
    let mitigation = if config.mitigation_enabled {
        "on"
    } else {
        "off"
    };
    vec![
        Check {
            name: "killer blows up fixed pivot",
            passed: fixed >= quad,
            detail: format!("{fixed} comparisons at n={n} (n^2/8 = {quad})"),
        },
        Check {
            name: "killer input vs triple state",
            passed: (worst as f64) <= bound,
            detail: format!(
                "mitigation {mitigation}: worst {worst} comparisons over {KILLER_SEEDS} seeds (bound 64 n log2 n = {bound:.0}){}",
                if (worst as f64) > bound { ", quadratic blowup" } else { "" }
            ),
        },
    ]
}

/// Runs the whole suite; the configuration is validated first and nothing
/// else runs if it is rejected.
pub fn run_all(config: &SortConfig) -> Vec<Check> {
    if let Err(e) = config.validate() {
        return vec![Check {
            name: "configuration",
            passed: false,
            detail: e.to_string(),
        }];
    }
    let mut out = vec![Check {
        name: "configuration",
        passed: true,
        detail: "valid".into(),
    }];
    out.push(exhaustive_permutations(config));
    out.push(exhaustive_ternary(config));
    out.push(median_of_5_certificate());
    out.push(predictor_agreement());
    out.extend(killer_checks(config));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_walk_counts() {
        let mut p = [1, 2, 3, 4];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, [4, 3, 2, 1]);
    }

    #[test]
    fn bad_threshold_stops_the_suite() {
        let cfg = SortConfig {
            insertion_threshold: 0,
            ..SortConfig::default()
        };
        let report = run_all(&cfg);
        assert_eq!(report.len(), 1);
        assert!(!report[0].passed);
    }

    #[test]
    fn certificate_and_recurrence_hold() {
        assert!(median_of_5_certificate().passed);
        assert!(predictor_agreement().passed);
    }
}

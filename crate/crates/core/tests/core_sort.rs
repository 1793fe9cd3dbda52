use std::cmp::Ordering;

use proptest::prelude::*;
use tristate::instrument::shadow_write_monitor;
use tristate::{SortConfig, Sorter, StageBounds, StateId};

fn cfg(threshold: usize) -> SortConfig {
    SortConfig {
        insertion_threshold: threshold,
        ..SortConfig::default()
    }
}

fn next_perm(v: &mut [i32]) -> bool {
    let n = v.len();
    let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Checks the three-way layout reported at the end of a stage against the
/// pivot value found in the equals block.
fn check_stage(v: &[i32], b: StageBounds) {
    assert!(
        b.a <= b.lo_end && b.lo_end < b.hi_start && b.hi_start <= b.end,
        "{b:?}"
    );
    let p = v[b.lo_end];
    assert!(
        v[b.a..b.lo_end].iter().all(|&x| x < p),
        "left side of {b:?} in {v:?}"
    );
    assert!(
        v[b.lo_end..b.hi_start].iter().all(|&x| x == p),
        "middle of {b:?} in {v:?}"
    );
    assert!(
        v[b.hi_start..b.end].iter().all(|&x| x > p),
        "right side of {b:?} in {v:?}"
    );
}

fn sort_checked(sorter: &mut Sorter<i32>, v: &mut [i32]) {
    let mut stages = 0;
    let mut obs = |a: &[i32], b: StageBounds| {
        stages += 1;
        check_stage(a, b);
    };
    sorter.sort_observed(v, i32::cmp, &mut obs).unwrap();
}

#[test]
fn empty_and_singleton() {
    let mut s = Sorter::with_seed(SortConfig::default(), 1).unwrap();
    let mut v: Vec<i32> = vec![];
    assert_eq!(s.sort(&mut v).unwrap().comparisons, 0);
    let mut v = vec![7];
    assert_eq!(s.sort(&mut v).unwrap().element_writes, 0);
}

#[test]
fn small_multiset() {
    let mut v = vec![5, 3, 5, 1, 5];
    tristate::sort(&mut v);
    assert_eq!(v, [1, 3, 5, 5, 5]);
}

#[test]
fn all_permutations_of_eight_with_stage_oracle() {
    let mut sorter = Sorter::with_seed(cfg(3), 7).unwrap();
    let mut p: Vec<i32> = (1..=8).collect();
    loop {
        let mut v = p.clone();
        sort_checked(&mut sorter, &mut v);
        assert_eq!(v, (1..=8).collect::<Vec<_>>(), "input {p:?}");
        let mut w = p.clone();
        sorter.sort_slot_checked(&mut w, i32::cmp).unwrap();
        if !next_perm(&mut p) {
            break;
        }
    }
}

#[test]
fn ternary_alphabet_up_to_ten() {
    let mut sorter = Sorter::with_seed(cfg(3), 3).unwrap();
    for n in 1..=10u32 {
        for code in 0..3u32.pow(n) {
            let mut x = code;
            let input: Vec<i32> = (0..n)
                .map(|_| {
                    let d = (x % 3) as i32;
                    x /= 3;
                    d
                })
                .collect();
            let mut v = input.clone();
            sort_checked(&mut sorter, &mut v);
            let mut want = input.clone();
            want.sort();
            assert_eq!(v, want, "input {input:?}");
            let mut w = input.clone();
            sorter.sort_slot_checked(&mut w, i32::cmp).unwrap();
        }
    }
}

#[test]
fn all_equal_is_one_stage() {
    let mut sorter = Sorter::with_seed(SortConfig::default(), 5).unwrap();
    let mut v = vec![4; 100_000];
    let s = sorter.sort(&mut v).unwrap();
    assert_eq!(s.stages, 1);
    assert!(s.comparisons <= 3 * 100_000);
}

#[test]
fn stray_value_in_sorted_plateau_is_cheap() {
    let n = 20_000;
    let mut v: Vec<i32> = (0..n).map(|i| i.min(200)).collect();
    v[n as usize / 2 + 700] = 3;
    let mut want = v.clone();
    want.sort();
    let mut sorter = Sorter::with_seed(SortConfig::default(), 1).unwrap();
    let s = sorter.sort_slot_checked(&mut v, i32::cmp).unwrap();
    assert_eq!(v, want);
    assert_eq!(s.handlers.fallbacks, 1, "{s:?}");
    assert!(s.comparisons <= n as u64 * 11 / 10, "{s:?}");
}

#[test]
fn counters_match_monitors() {
    let mut sorter = Sorter::with_seed(SortConfig::default(), 11).unwrap();
    let mut seed = 42u64;
    let input: Vec<i64> = (0..5000)
        .map(|_| {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 40) as i64 % 700
        })
        .collect();
    let mut monitor = shadow_write_monitor(input.clone());
    let (cmp, count) = tristate::instrument::counting_comparator(
        |a: &tristate::instrument::Counted<i64>, b: &tristate::instrument::Counted<i64>| a.cmp(b),
    );
    let mut sorter2 = Sorter::with_seed(SortConfig::default(), 11).unwrap();
    let s = sorter2.sort_by(&mut monitor.items, cmp).unwrap();
    assert_eq!(s.element_writes, monitor.writes());
    assert_eq!(s.comparisons, count.get());
    let mut plain = input.clone();
    let s2 = sorter.sort(&mut plain).unwrap();
    assert_eq!(s, s2);
    assert_eq!(monitor.into_values(), plain);
}

#[test]
fn temp_storage_is_retained_and_freed() {
    let mut s = Sorter::with_seed(SortConfig::default(), 1).unwrap();
    let mut v: Vec<i32> = (0..100).rev().collect();
    s.sort(&mut v).unwrap();
    assert_eq!(s.temp_store().capacity(), 50);
    assert_eq!(s.temp_store().allocations(), 1);
    let mut w: Vec<i32> = (0..50).collect();
    s.sort(&mut w).unwrap();
    assert_eq!(s.temp_store().allocations(), 1);
    s.free_temp_storage();
    let mut u: Vec<i32> = (0..10).collect();
    s.sort(&mut u).unwrap();
    assert_eq!(s.temp_store().capacity(), 5);
    assert_eq!(s.temp_store().allocations(), 2);

    let mut fresh: Sorter<i32> = Sorter::with_seed(SortConfig::default(), 1).unwrap();
    fresh.free_temp_storage();
    assert_eq!(fresh.temp_store().capacity(), 0);
}

#[test]
fn invalid_config_is_rejected() {
    assert!(Sorter::<i32>::new(SortConfig {
        insertion_threshold: 0,
        ..SortConfig::default()
    })
    .is_err());
    assert!(Sorter::<i32>::new(SortConfig {
        medof5_max_n: 50,
        ..SortConfig::default()
    })
    .is_err());
}

#[test]
fn deterministic_without_mitigation() {
    let c = SortConfig {
        mitigation_enabled: false,
        ..SortConfig::default()
    };
    let input: Vec<u32> = (0..20_000u32)
        .map(|i| i.wrapping_mul(2_654_435_761) % 10_007)
        .collect();
    let mut a = input.clone();
    let mut b = input.clone();
    let sa = Sorter::with_seed(c.clone(), 9)
        .unwrap()
        .sort(&mut a)
        .unwrap();
    let sb = Sorter::with_seed(c, 9).unwrap().sort(&mut b).unwrap();
    assert_eq!(sa, sb);
}

#[test]
fn strings_sort_through_generic_comparator() {
    let mut v: Vec<String> = (0..500)
        .map(|i| format!("name{}", (i * 7919) % 503))
        .collect();
    let mut want = v.clone();
    want.sort();
    Sorter::with_seed(SortConfig::default(), 2)
        .unwrap()
        .sort(&mut v)
        .unwrap();
    assert_eq!(v, want);
}

#[test]
fn descending_comparator() {
    let mut v: Vec<i32> = (0..1000).map(|i| (i * 37) % 101).collect();
    let mut want = v.clone();
    want.sort_by(|a, b| b.cmp(a));
    Sorter::with_seed(SortConfig::default(), 2)
        .unwrap()
        .sort_by(&mut v, |a: &i32, b: &i32| b.cmp(a))
        .unwrap();
    assert_eq!(v, want);
}

#[test]
fn every_state_is_reachable() {
    let mut sorter = Sorter::with_seed(cfg(3), 1).unwrap();
    let mut totals = [0u64; StateId::COUNT];
    let mut seed = 1u64;
    for round in 0..400 {
        let n = 20 + round % 300;
        let range = 1 + (round % 7) * (round % 5) * 3;
        let mut v: Vec<i32> = (0..n)
            .map(|_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1);
                ((seed >> 33) % range as u64) as i32
            })
            .collect();
        let s = sorter.sort_slot_checked(&mut v, i32::cmp).unwrap();
        assert!(v.windows(2).all(|w| w[0] <= w[1]));
        for (t, x) in totals.iter_mut().zip(s.state_activations.0) {
            *t += x;
        }
    }
    for s in StateId::ALL {
        assert!(totals[s as usize] > 0, "{s:?} never entered: {totals:?}");
    }
}

proptest! {
    #[test]
    fn sorts_random_vectors(v in prop::collection::vec(0i32..50, 0..600), seed in 1u32..1000, t in 3usize..20) {
        let mut sorter = Sorter::with_seed(cfg(t), seed).unwrap();
        let mut got = v.clone();
        sort_checked(&mut sorter, &mut got);
        let mut want = v.clone();
        want.sort();
        prop_assert_eq!(&got, &want);
        let mut w = v.clone();
        let s = sorter.sort_slot_checked(&mut w, i32::cmp).unwrap();
        prop_assert!(s.temp_high_water <= v.len().div_ceil(2));
        prop_assert_eq!(s.virtual_swaps(), s.element_writes as f64 / 3.0);
    }

    #[test]
    fn sorts_perturbed_sorted_plateaus(
        n in 20usize..3000,
        top in 1i32..40,
        strays in prop::collection::vec((any::<prop::sample::Index>(), 0i32..60), 1..6),
    ) {
        let mut v: Vec<i32> = (0..n as i32).map(|i| i.min(top)).collect();
        for (at, x) in strays {
            v[at.index(n)] = x;
        }
        let mut want = v.clone();
        want.sort();
        let mut sorter = Sorter::with_seed(cfg(8), 3).unwrap();
        let mut got = v.clone();
        sort_checked(&mut sorter, &mut got);
        prop_assert_eq!(&got, &want);
        let s = sorter.sort_slot_checked(&mut v, i32::cmp).unwrap();
        prop_assert_eq!(&v, &want);
        prop_assert_eq!(s.virtual_swaps(), s.element_writes as f64 / 3.0);
    }

    #[test]
    fn sorts_wide_range_vectors(v in prop::collection::vec(any::<i32>(), 0..2000)) {
        let mut sorter = Sorter::with_seed(SortConfig::default(), 77).unwrap();
        let mut got = v.clone();
        sorter.sort_by(&mut got, |a: &i32, b: &i32| a.cmp(b)).unwrap();
        let mut want = v;
        want.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
        prop_assert_eq!(got, want);
    }
}

//! Closed-form average-case predictors for comparison and swap counts.
//!
//! Classical quicksort averages are the textbook asymptotics; the Triple
//! State swap count comes from solving the per-stage copy recurrence
//! `S(n) = (1 + 1/n)(2/9 + S(n-1))` with `S(2) = 1/2`, whose closed form is
//! `(2/9)(n+1)H(n) - (n+1)/6`.
//!
//! All predictors return signed reals. At tiny `n` the asymptotic forms go
//! negative; callers clamp for display.

/// Euler–Mascheroni constant, to the precision used by the harmonic approximation.
pub const EULER_GAMMA: f64 = 0.577_215_664_9;

/// Largest `n` for which harmonic numbers are summed exactly.
pub const HARMONIC_EXACT_MAX: u64 = 1_000_000;

/// Predicted values for one array size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub n: u64,
    pub comparisons_classic: f64,
    pub swaps_classic: f64,
    pub swaps_tsq_exact: f64,
    pub swaps_tsq_approx: f64,
}

impl Prediction {
    pub fn for_size(n: u64) -> Self {
        Prediction {
            n,
            comparisons_classic: predict_comparisons(n),
            swaps_classic: predict_swaps_classic(n),
            swaps_tsq_exact: predict_swaps_tsq_exact(n),
            swaps_tsq_approx: predict_swaps_tsq_approx(n),
        }
    }
}

/// `H(n) = 1 + 1/2 + ... + 1/n`.
///
/// Summed exactly (smallest terms first) up to [`HARMONIC_EXACT_MAX`],
/// `ln n + γ + 1/(2n)` beyond.
pub fn harmonic(n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if n <= HARMONIC_EXACT_MAX {
        (1..=n).rev().map(|k| 1.0 / k as f64).sum()
    } else {
        let x = n as f64;
        x.ln() + EULER_GAMMA + 1.0 / (2.0 * x)
    }
}

/// Average comparisons of classical quicksort: `2n ln n - 2.8456n`.
pub fn predict_comparisons(n: u64) -> f64 {
    let x = n as f64;
    2.0 * x * x.ln() - 2.8456 * x
}

/// Average swaps of classical quicksort: `0.33n ln n - 0.58n`.
pub fn predict_swaps_classic(n: u64) -> f64 {
    let x = n as f64;
    0.33 * x * x.ln() - 0.58 * x
}

/// Exact closed form of the Triple State virtual-swap recurrence.
pub fn predict_swaps_tsq_exact(n: u64) -> f64 {
    let x = n as f64;
    (2.0 / 9.0) * (x + 1.0) * harmonic(n) - (x + 1.0) / 6.0
}

/// Asymptotic form of [`predict_swaps_tsq_exact`]: `0.222n ln n - 0.038n`.
pub fn predict_swaps_tsq_approx(n: u64) -> f64 {
    let x = n as f64;
    0.222 * x * x.ln() - 0.038 * x
}

/// Iterates the virtual-swap recurrence upward from `S(2) = 0.5`.
///
/// Returns `0.0` for `n < 2`.
pub fn recurrence_oracle(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut s = 0.5;
    for k in 3..=n {
        s = (1.0 + 1.0 / k as f64) * (2.0 / 9.0 + s);
    }
    s
}

/// All recurrence values `S(2..=max_n)` in one pass, indexed by `n`.
pub fn recurrence_table(max_n: u64) -> Vec<f64> {
    let mut out = vec![0.0; (max_n as usize + 1).max(3)];
    if max_n < 2 {
        out.truncate(max_n as usize + 1);
        return out;
    }
    out[2] = 0.5;
    for k in 3..=max_n as usize {
        out[k] = (1.0 + 1.0 / k as f64) * (2.0 / 9.0 + out[k - 1]);
    }
    out.truncate(max_n as usize + 1);
    out
}

/// Per-stage virtual swaps of the copy-based partition, `(n/9 + 5/(9n)) + 1/3`.
pub fn stage_virtual_swaps(n: f64) -> f64 {
    (n / 9.0 + 5.0 / (9.0 * n)) + 1.0 / 3.0
}

/// The same quantity derived from the classical per-stage swap count
/// `n/6 + 5/(6n)`: two element copies per swap, one extra holdover copy,
/// divided by three.
pub fn stage_virtual_swaps_from_classic(n: f64) -> f64 {
    (2.0 * (n / 6.0 + 5.0 / (6.0 * n)) + 1.0) / 3.0
}

/// Smallest `n` in `[lo, hi]` from which the approximate Triple State swap
/// prediction stays strictly below the classical one through `hi`.
///
/// Returns `None` if the inequality does not hold at `hi`.
pub fn swap_crossover(lo: u64, hi: u64) -> Option<u64> {
    let below = |n| predict_swaps_tsq_approx(n) < predict_swaps_classic(n);
    if !below(hi) {
        return None;
    }
    let mut first = hi;
    let mut n = hi;
    while n > lo {
        n -= 1;
        if below(n) {
            first = n;
        } else {
            break;
        }
    }
    Some(first)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn comparisons_direct_values() {
        assert!(close(
            predict_comparisons(2),
            4.0 * 2f64.ln() - 5.6912,
            1e-12
        ));
        assert!(close(predict_comparisons(2), -2.9186, 1e-4));
        assert!(close(predict_comparisons(1000), 10969.9, 0.05));
    }

    #[test]
    fn comparisons_at_e_cancel_the_log() {
        let e = std::f64::consts::E;
        let v = 2.0 * e * e.ln() - 2.8456 * e;
        assert!(close(v, 2.0 * e - 2.8456 * e, 1e-12));
    }

    #[test]
    fn classic_swaps_direct_values() {
        assert!(close(predict_swaps_classic(1000), 1699.6, 0.05));
        assert!(predict_swaps_classic(2) < 0.0);
    }

    #[test]
    fn tsq_exact_small_values() {
        assert!(close(predict_swaps_tsq_exact(2), 0.5, 1e-12));
        // S3 = (4/3)(2/9 + 1/2)
        let s3 = (4.0 / 3.0) * (2.0 / 9.0 + 0.5);
        assert!(close(predict_swaps_tsq_exact(3), s3, 1e-12));
        assert!(close(s3, 0.96296, 1e-5));
    }

    #[test]
    fn tsq_approx_direct_values() {
        assert!(close(predict_swaps_tsq_approx(1000), 1495.5, 0.05));
        assert!(close(predict_swaps_tsq_approx(100_000), 251787.0, 0.5));
    }

    #[test]
    fn exact_and_approx_agree_at_1000() {
        let e = predict_swaps_tsq_exact(1000);
        let a = predict_swaps_tsq_approx(1000);
        assert!(((e - a) / e).abs() < 0.005);
        assert!(close(e, 1498.3, 0.1));
    }

    #[test]
    fn approx_gap_shrinks_then_levels_off() {
        let gap = |n| {
            let e = predict_swaps_tsq_exact(n);
            ((e - predict_swaps_tsq_approx(n)) / e).abs()
        };
        let sizes = [100u64, 1_000, 10_000, 100_000];
        for w in sizes.windows(2) {
            assert!(
                gap(w[1]) < gap(w[0]),
                "gap did not shrink from {} to {}",
                w[0],
                w[1]
            );
        }
        // 0.222 rounds 2/9, so a relative floor of about 1e-3 remains.
        for n in [1_000_000u64, 100_000_000, 10_000_000_000] {
            assert!(gap(n) < 1e-3, "n={n}: gap {}", gap(n));
        }
    }

    #[test]
    fn unrounded_asymptote_converges() {
        let c = 2.0 * EULER_GAMMA / 9.0 - 1.0 / 6.0;
        let gap = |n: u64| {
            let x = n as f64;
            let e = predict_swaps_tsq_exact(n);
            ((e - (2.0 / 9.0 * x * x.ln() + c * x)) / e).abs()
        };
        let sizes = [1_000u64, 10_000, 100_000, 1_000_000, 100_000_000];
        for w in sizes.windows(2) {
            assert!(gap(w[1]) < gap(w[0]));
        }
    }

    #[test]
    fn recurrence_matches_closed_form() {
        let table = recurrence_table(10_000);
        for n in 2..=10_000u64 {
            let closed = predict_swaps_tsq_exact(n);
            let rel = ((table[n as usize] - closed) / closed).abs();
            assert!(rel < 1e-9, "n={n}: rel={rel}");
        }
        assert_eq!(recurrence_oracle(2), 0.5);
        assert!(close(recurrence_oracle(3), 0.962_962_96, 1e-8));
        assert_eq!(recurrence_oracle(777), table[777]);
    }

    #[test]
    fn stage_identity_holds_numerically() {
        let mut n = 2.0;
        while n <= 1e6 {
            let a = stage_virtual_swaps(n);
            let b = stage_virtual_swaps_from_classic(n);
            assert!(((a - b) / a).abs() < 1e-12);
            n *= 1.37;
        }
    }

    #[test]
    fn harmonic_switchover_is_continuous() {
        let exact = harmonic(HARMONIC_EXACT_MAX);
        let approx = harmonic(HARMONIC_EXACT_MAX + 1);
        assert!((approx - exact - 1.0 / (HARMONIC_EXACT_MAX + 1) as f64).abs() < 1e-9);
    }

    #[test]
    fn crossover_of_printed_coefficients() {
        // With the coefficients as printed the approximate Triple State
        // prediction drops below the classical one from n = 152 onward.
        assert_eq!(swap_crossover(2, 1_000_000), Some(152));
    }
}

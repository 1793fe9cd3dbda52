//! `tsq-bench predict`: closed-form averages side by side.

use std::fmt::Write;

use tristate::analysis::Prediction;

pub fn table(sizes: &[u64]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>12} {:>16} {:>14} {:>15} {:>16} {:>8}",
        "n", "comparisons", "swaps_classic", "swaps_tsq_exact", "swaps_tsq_approx", "fewer"
    );
    for &n in sizes {
        let p = Prediction::for_size(n);
        let fewer = if p.swaps_tsq_approx < p.swaps_classic {
            "tsq"
        } else {
            "classic"
        };
        let _ = writeln!(
            out,
            "{:>12} {:>16.1} {:>14.1} {:>15.4} {:>16.1} {:>8}",
            n, p.comparisons_classic, p.swaps_classic, p.swaps_tsq_exact, p.swaps_tsq_approx, fewer
        );
    }
    out
}

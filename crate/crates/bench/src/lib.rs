//! Fixtures shared by the benchmarks.

use polyq_core::{enumerate_trivalent, label_box, LengthVector, RibbonTree};

/// Every trivalent tree with exactly `n` leaves.
pub fn trees(n: usize) -> Vec<RibbonTree> {
    enumerate_trivalent(n)
}

/// All length vectors `(d; c)` with `n` leaves and entries at most `max`.
pub fn length_box(n: usize, max: u64) -> Vec<LengthVector> {
    label_box(n + 1, max)
        .map(|v| LengthVector::new(v[0], v[1..].to_vec()))
        .collect()
}

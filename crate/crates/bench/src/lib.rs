//! Shared inputs for the benchmarks.

use petrie_core::Partition;

/// Shape whose 5-Petrie matrix over the empty partition has a tree graph.
pub fn tree_shape() -> Partition {
    Partition::from(&[4, 4, 4, 3, 2, 2, 2, 1, 1][..])
}

/// A skew shape with two cancelling good pairs at `k = 5`.
pub fn cancelling_shape() -> (Partition, Partition) {
    (
        Partition::from(&[6, 6, 6, 6, 5, 5, 4, 4, 2][..]),
        Partition::from(&[4, 2, 2, 2, 2, 1, 1, 1][..]),
    )
}

//! Petrie symmetric functions and the combinatorics around them.
//!
//! The crate computes `pet_k(λ, μ)` four independent ways (determinant,
//! good orientations, good pairs, and the k-core formula for `μ = ∅`),
//! checks Schur expansions with a small symmetric-function engine, and
//! enumerates cycle Petrie matrices together with their Motzkin paths.

pub mod cycle;
pub mod cylinder;
pub mod error;
pub mod matrix;
pub mod maya;
pub mod orientation;
pub mod partition;
pub mod ribbon;
pub mod symfunc;
pub mod verify;

pub use cycle::{
    count_redblue, cp_table_report, enumerate_cycle_petrie, lattice_balance, motzkin_of,
    nonnesting_cycles, polygonal_line, ray_shoot, redblue_valid, spiral, verify_cycle_orientations,
    Color, ColoredPath, Convention, CyclePetrieMatrix, MotzkinPath, Step,
};
pub use cylinder::{
    cell_graph, classify_cycles, genfunc_tq, CellGraph, Factored, GenFunc, IntPoly2,
};
pub use error::{Error, Result};
pub use matrix::{
    build_pet_k, det_exact, det_petrie, is_totally_petrie, pet_k, PetrieMatrix, Quadrant,
    RowInterval,
};
pub use maya::{
    abacus_of, add_ribbon, k_core, maya_of, partition_of_maya, remove_ribbon, Abacus, MayaDiagram,
    Ribbon,
};
pub use orientation::{
    det_by_orientations, enumerate_good_orientations, good_structure, graph_of, orientation_stats,
    reverse_cycle, GoodOrientation, GoodStructure, OrientationStats, PetrieGraph,
};
pub use partition::{is_horizontal_strip, Partition, SkewShape};
pub use ribbon::{
    base_graph_check, enumerate_good_pairs, good_pair_to_orientation, good_pairs_via_orientations,
    justified_tilings, orientation_to_good_pair, pet_by_good_pairs, pet_core_formula, GoodPair,
    Justify, KDecomposition,
};
pub use symfunc::{ExpansionCheck, Mismatch, SchurExpansion, SymEngine, SymPoly};
pub use verify::{run_suite, Budget, Suite, SuiteReport, VerifyConfig};

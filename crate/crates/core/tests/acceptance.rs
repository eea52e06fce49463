//! The twelve acceptance criteria at full scale, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the verdict lines always print.
//! A criterion listed in `KNOWN_GAPS` may fail only in the recorded way.

use std::process::ExitCode;
use std::time::Instant;

use petrie_core::cycle::{count_redblue, REFERENCE_REDBLUE};
use petrie_core::{run_suite, Suite, SuiteReport, VerifyConfig};

const CRITERIA: [(u8, Suite, &str); 12] = [
    (
        1,
        Suite::DetOrient,
        "determinant equals signed orientation count",
    ),
    (
        2,
        Suite::PetThreeway,
        "determinant, good pairs and core formula agree",
    ),
    (
        3,
        Suite::Grinberg,
        "Schur coefficients of G(k,n) s_mu are pet values",
    ),
    (4, Suite::Fixtures, "worked values"),
    (
        5,
        Suite::Genfunc,
        "size/inversion generating function factorises",
    ),
    (6, Suite::CycleReversal, "cycle reversal deltas with sign"),
    (
        7,
        Suite::PlethysmMn,
        "plethystic ribbon rule, e and h forms",
    ),
    (8, Suite::Redblue, "red-blue path counts"),
    (
        9,
        Suite::LatticeBalance,
        "lattice point balance under red-blue paths",
    ),
    (10, Suite::Spiral, "spiral law and polygonal lines"),
    (11, Suite::CpTable, "cycle Petrie matrix table"),
    (
        12,
        Suite::Properties,
        "round trips, cores, bijection, multiplicativity",
    ),
];

/// The listed red-blue count at length 20 exceeds the exhaustive count by 30;
/// every other check in the suite must pass.
fn redblue_gap(r: &SuiteReport) -> bool {
    r.total == r.passed + 1
        && r.failures.len() == 1
        && r.failures[0].starts_with("length 20:")
        && count_redblue(20) == 1_478_265
        && REFERENCE_REDBLUE[19] == 1_478_295
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut clean = true;
    for (n, suite, what) in CRITERIA {
        let start = Instant::now();
        let report = match run_suite(suite, &cfg) {
            Ok(r) => r,
            Err(e) => {
                println!("criterion {n:>2} FAIL {suite}: {what} (error: {e})");
                clean = false;
                continue;
            }
        };
        let verdict = if report.ok() { "PASS" } else { "FAIL" };
        println!(
            "criterion {n:>2} {verdict} {suite}: {what} [{}/{} in {:.1?}]",
            report.passed,
            report.total,
            start.elapsed()
        );
        if report.ok() {
            continue;
        }
        for f in &report.failures {
            println!("    {f}");
        }
        if suite == Suite::Redblue && redblue_gap(&report) {
            println!("    known gap: reference lists 1478295 at length 20, exhaustive search gives 1478265");
        } else {
            clean = false;
        }
    }
    if clean {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use petrie_core::cycle::{conjecture_report, count_redblue, cp_table_report, Convention};
use petrie_core::{
    build_pet_k, det_by_orientations, enumerate_good_orientations, enumerate_good_pairs,
    genfunc_tq, graph_of, orientation_stats, pet_by_good_pairs, pet_core_formula, pet_k, run_suite,
    Budget, Partition, Suite, SymEngine, VerifyConfig,
};

/// Petrie symmetric functions, Petrie matrices and cycle Petrie matrices.
///
/// Partitions are comma-separated parts, `-` for the empty partition.
/// PETRIE_DEGREE_BOUND caps the symmetric-function degree (default 16).
#[derive(Parser)]
#[command(name = "petrie", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Det,
    Orient,
    Pairs,
    Core,
}

#[derive(Subcommand)]
enum Command {
    /// pet_k(λ, μ) by one of four routes.
    Pet {
        lam: Partition,
        mu: Partition,
        k: usize,
        #[arg(long, value_enum, default_value = "det")]
        method: Method,
        /// Also print the good pairs behind the value.
        #[arg(long)]
        witness: bool,
    },
    /// Schur expansion of G(k, n)·s_μ, checked against pet values.
    Expand { k: usize, n: usize, mu: Partition },
    /// Good pairs of λ/μ.
    Goodpairs {
        lam: Partition,
        mu: Partition,
        k: usize,
    },
    /// Good orientations of Pet_k(λ, μ) with their statistics.
    Orientations {
        lam: Partition,
        mu: Partition,
        k: usize,
    },
    /// Size/inversion generating function and its factorisation.
    Genfunc {
        lam: Partition,
        mu: Partition,
        k: usize,
    },
    /// Cycle Petrie matrix counts per path length, tab-separated.
    CpTable {
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Repeatable; defaults to tp-weak, staircase and column.
        #[arg(long)]
        convention: Vec<Convention>,
        #[arg(long)]
        json: bool,
    },
    /// Number of red-blue valid Motzkin paths of a length.
    MotzkinCount {
        #[arg(long)]
        len: usize,
    },
    /// Monotone polygonal heights and the split of the red-blue sequence.
    ConjectureReport {
        #[arg(long, default_value_t = 10)]
        max_rows: usize,
        #[arg(long, default_value_t = 9)]
        max_lis: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite; exits nonzero unless every case passes.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// quick or full.
        #[arg(long, default_value = "full")]
        budget: Budget,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

fn pet(lam: &Partition, mu: &Partition, k: usize, method: Method) -> Result<i64> {
    Ok(match method {
        Method::Det => pet_k(lam, mu, k) as i64,
        Method::Orient => det_by_orientations(&build_pet_k(lam, mu, k, None)?)?,
        Method::Pairs => pet_by_good_pairs(lam, mu, k),
        Method::Core => {
            if !mu.is_empty() {
                bail!("the core formula needs an empty inner shape");
            }
            pet_core_formula(lam, k)?
        }
    })
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Pet {
            lam,
            mu,
            k,
            method,
            witness,
        } => {
            println!("{}", pet(&lam, &mu, k, method)?);
            if witness {
                let pairs = enumerate_good_pairs(&lam, &mu, k);
                println!("pairs={}", pairs.len());
                for gp in pairs {
                    print!("sign={}\n{gp}", gp.sign());
                }
            }
        }
        Command::Expand { k, n, mu } => {
            let engine = SymEngine::from_env()?;
            let check = engine.verify_grinberg(k, n, &mu)?;
            print!("{}", check.expansion);
            for m in &check.mismatches {
                eprintln!("mismatch {m}");
            }
            return Ok(check.ok());
        }
        Command::Goodpairs { lam, mu, k } => {
            let pairs = enumerate_good_pairs(&lam, &mu, k);
            println!("pairs={}", pairs.len());
            for gp in pairs {
                print!("{gp}");
            }
        }
        Command::Orientations { lam, mu, k } => {
            let g = graph_of(&build_pet_k(&lam, &mu, k, None)?);
            let all = enumerate_good_orientations(&g);
            println!("orientations={}", all.len());
            for o in all {
                let s = orientation_stats(&g, &o)?;
                let word: Vec<String> = o.word(&g).iter().map(|v| v.to_string()).collect();
                println!(
                    "word={} size={} inv={} weight={}",
                    word.join(","),
                    s.size,
                    s.inv,
                    s.weight
                );
            }
        }
        Command::Genfunc { lam, mu, k } => {
            let gf = genfunc_tq(&lam, &mu, k)?;
            print!("{}", gf.poly);
            match gf.factored {
                Some(f) => println!("factored a={} b={} c={} nc={}", f.a, f.b, f.c, f.nc),
                None => println!("factored none"),
            }
        }
        Command::CpTable {
            nmax,
            convention,
            json,
        } => {
            let conventions = if convention.is_empty() {
                vec![
                    Convention::TpWeak,
                    Convention::Staircase,
                    Convention::ColumnStructured,
                ]
            } else {
                convention
            };
            let report = cp_table_report(nmax, &conventions)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
        }
        Command::MotzkinCount { len } => println!("{}", count_redblue(len)),
        Command::ConjectureReport {
            max_rows,
            max_lis,
            json,
        } => {
            let report = conjecture_report(max_rows, max_lis)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
            return Ok(report.monotone_ok() && report.odd_ok() && report.even_ok());
        }
        Command::Verify {
            suite,
            seed,
            budget,
            jobs,
            json,
        } => {
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j)
                    .build_global()
                    .context("worker pool")?;
            }
            let report = run_suite(suite, &VerifyConfig { seed, budget })?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{report}");
            }
            return Ok(report.ok());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

//! Runs each acceptance criterion in turn and prints one PASS/FAIL line per criterion.
//! Criteria run sequentially because the limits are wall-clock.
//!
//! `cargo test --test acceptance -- 4 11` runs a subset.

use std::process::ExitCode;

use ndep_core::suite::{run_criterion, CRITERIA, DEFAULT_SEED};

fn main() -> ExitCode {
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for &(id, _, _) in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.0)) {
        match run_criterion(id, DEFAULT_SEED) {
            Ok(out) => {
                let ok = out.pass && out.within_limit;
                println!("{}", out.line());
                for f in out.failures.iter().skip(1).take(5) {
                    println!("    also: {f}");
                }
                if !out.within_limit {
                    println!("    over the limit: {} ms > {} s", out.elapsed_ms, out.limit_s);
                }
                failed += usize::from(!ok);
            }
            Err(e) => {
                println!("criterion {id:>2}: FAIL  {e}");
                failed += 1;
            }
        }
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}

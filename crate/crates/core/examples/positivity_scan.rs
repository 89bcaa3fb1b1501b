//! Scans every pair of compositions up to a given weight for negative
//! coefficients in `K_{λμ}(q,t)` and in its marked refinements.
//!
//! Usage: `cargo run --release --example positivity_scan [max_weight] [jobs]`

use kostka::scan::{scan, ScanOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let max_weight = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let jobs = args.next().map(|s| s.parse()).transpose()?;
    let report = scan(&ScanOptions { max_weight, marked: true, jobs, ..Default::default() })?;

    println!("pairs scanned: {}", report.pairs);
    println!("working ranks per weight: {:?}", report.ranks);
    println!("checks: {:?}", report.checks);
    println!("smallest v-exponent in any K: {:?}", report.min_v_exponent);
    for (k, t) in &report.timings {
        println!("{k}: {t:.2}");
    }
    if report.is_clean() {
        println!("no violations");
    } else {
        for v in &report.violations {
            println!("{v:?}");
        }
        std::process::exit(1);
    }
    Ok(())
}

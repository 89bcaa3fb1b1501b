//! Tables of composition Kostka functions `K_{λμ}(q,t)`, with the
//! Kostka-Foulkes polynomials at `q = 0` alongside for partitions.
//!
//! Usage: `cargo run --release --example kostka_table [weight]`

use kostka::kostka::{charge_oracle, kostka};
use kostka::Composition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let parts = Composition::partitions_of(d);

    println!("partitions of {d}:");
    for lam in &parts {
        for mu in &parts {
            let k = kostka(lam, mu)?;
            let kf = charge_oracle(lam, mu)?;
            println!("  K_({lam}),({mu}) = {:<32} K(0,t) = {}", k.value.to_string(), kf);
        }
    }

    println!("compositions of {d} against the partition ({d}):");
    let top = Composition::new(vec![d]);
    for mu in Composition::all_of_weight(d, d as usize) {
        println!("  K_({top}),({mu}) = {}", kostka(&top, &mu)?.value);
    }
    Ok(())
}

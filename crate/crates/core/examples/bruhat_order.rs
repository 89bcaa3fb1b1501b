//! The Bruhat order on compositions, seen as minimal coset representatives
//! of the extended affine Weyl group.
//!
//! Usage: `cargo run --example bruhat_order [weight] [rank]`

use kostka::bruhat::{preceq_at, min_rep_length};
use kostka::Composition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let d: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);

    let mut comps = Composition::all_of_weight(d, n);
    comps.sort_by_key(|c| std::cmp::Reverse(min_rep_length(c, n)));
    println!("compositions of {d} at rank {n}, longest first:");
    for lam in &comps {
        let covers: Vec<String> = comps
            .iter()
            .filter(|mu| *mu != lam && preceq_at(mu, lam, n))
            .filter(|mu| min_rep_length(mu, n) + 1 == min_rep_length(lam, n))
            .map(|mu| format!("({mu})"))
            .collect();
        println!("  ({lam})  length {}  covers {}", min_rep_length(lam, n), covers.join(" "));
    }
    Ok(())
}

//! The polynomial representation: Cherednik operators act diagonally on
//! non-symmetric Macdonald polynomials.
//!
//! Usage: `cargo run --example cherednik_eigen [rank]`

use kostka::macdonald::{e_monomial, eigenvalue};
use kostka::Composition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    for d in 0..=2 {
        for lam in Composition::all_of_weight(d, n) {
            let f = e_monomial(&lam, n)?;
            let mut line = format!("({lam}):");
            for i in 1..=n {
                let ev = eigenvalue(&lam, i, n)?;
                let ok = f.cherednik_xi(i)? == f.scale(&ev);
                line.push_str(&format!("  xi_{i} -> {ev}{}", if ok { "" } else { " (MISMATCH)" }));
            }
            println!("{line}");
        }
    }
    Ok(())
}

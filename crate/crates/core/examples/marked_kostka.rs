//! The marked refinement: `K_{λμ}(q,t) = Σ_S q^{A_S} K_{λμ̄_S}(t)` over all
//! markings `S` of the diagram of `μ`.
//!
//! Usage: `cargo run --release --example marked_kostka [lambda] [mu]`

use kostka::coeff::CoeffPoly;
use kostka::kostka::{kostka, marked_table};
use kostka::Composition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let lambda: Composition = args.next().as_deref().unwrap_or("3,1,1").parse()?;
    let mu: Composition = args.next().as_deref().unwrap_or("2,2,1").parse()?;

    let k = kostka(&lambda, &mu)?.value;
    println!("K_({lambda}),({mu}) = {k}");
    let mut total = CoeffPoly::zero();
    for t in marked_table(&lambda, &mu)? {
        if !t.value.is_zero() {
            println!("  {:<16} A={} L={}  {}", t.diagram.to_string(), t.a, t.l, t.value);
        }
        total += &t.value.shift(0, t.a as i32);
    }
    println!("sum over markings agrees: {}", total == k);
    Ok(())
}

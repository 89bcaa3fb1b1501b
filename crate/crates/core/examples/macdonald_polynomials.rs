//! Non-symmetric Macdonald polynomials in the standard and monomial bases,
//! their duality under the bar involution, and the symmetric `J_μ`.
//!
//! Usage: `cargo run --example macdonald_polynomials [mu] [rank]`

use kostka::macdonald::{duality_factor, e_monomial, e_tilde, symmetric_j};
use kostka::Composition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let mu: Composition = args.next().as_deref().unwrap_or("0,2,1").parse()?;
    let n = match args.next() {
        Some(s) => s.parse()?,
        None => mu.length().max(2),
    };

    let e = e_tilde(&mu, n)?;
    println!("E~_({mu}) at rank {n}, standard basis:\n  {}", e.element);
    println!("z^mu coefficient: {}", e.normalization);
    println!("monomial basis:\n  {}", e_monomial(&mu, n)?);
    println!("d(E~) = ({}) * E~: {}", duality_factor(&mu), e.element.bar_d()? == e.element.scale(&duality_factor(&mu)));

    let sorted = mu.sorted_desc();
    println!("J_({sorted}) at rank {n}:\n  {}", symmetric_j(&sorted, n.max(sorted.length()))?);
    Ok(())
}

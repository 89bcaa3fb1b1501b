//! Kazhdan-Lusztig elements of the polynomial parabolic module, and the
//! fact that for a partition they are the images of Schur polynomials.
//!
//! Usage: `cargo run --example kazhdan_lusztig [lambda] [rank]`

use kostka::kl::{default_rank, kl_element};
use kostka::tableaux::schur;
use kostka::Composition;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let lambda: Composition = args.next().as_deref().unwrap_or("1,0,2").parse()?;
    let n = match args.next() {
        Some(s) => s.parse()?,
        None => default_rank(&lambda, 0),
    };

    let kl = kl_element(&lambda, n)?;
    println!("KL element for ({lambda}) at rank {n}:\n  {}", kl.element);
    println!("self-dual: {}", kl.element.bar_d()? == *kl.element);

    for d in 1..=3 {
        for p in Composition::partitions_of(d) {
            let m = 4;
            let same = schur(&p, m)?.to_module()? == *kl_element(&p, m)?.element;
            println!("s_({p}) maps to the KL element at rank {m}: {same}");
        }
    }
    Ok(())
}

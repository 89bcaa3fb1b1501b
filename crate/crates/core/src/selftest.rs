//! Built-in invariant suites, run by `kostka selftest`.

use std::time::Instant;

use serde::Serialize;

use crate::coeff::CoeffPoly;
use crate::composition::Composition;
use crate::error::Result;
use crate::kl::kl_element;
use crate::kostka::{kostka, kostka_q0_check, marked_decomposition_check};
use crate::macdonald::{duality_check, eigen_check, marked_sum_check, specialization_check};
use crate::scan::{scan, ScanOptions};
use crate::tableaux::schur;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    /// Whether a failure here is a counterexample rather than a defect.
    pub conjecture: bool,
    pub detail: String,
    pub seconds: f64,
}

type Check = (&'static str, fn() -> Result<(bool, String)>);

fn all_up_to(d: u32, n: usize) -> impl Iterator<Item = Composition> {
    (0..=d).flat_map(move |k| Composition::all_of_weight(k, n))
}

fn first_failure(items: impl Iterator<Item = Composition>, f: impl Fn(&Composition) -> Result<bool>) -> Result<(bool, String)> {
    let mut count = 0;
    for x in items {
        count += 1;
        if !f(&x)? {
            return Ok((false, format!("fails at ({x})")));
        }
    }
    Ok((true, format!("{count} cases")))
}

fn worked_example() -> Result<(bool, String)> {
    let k = kostka(&"3,1".parse()?, &"2,2".parse()?)?.value;
    let expect = CoeffPoly::t() + CoeffPoly::monomial(1, 2, 1) + CoeffPoly::monomial(1, 4, 1);
    Ok((k == expect, k.to_string()))
}

fn q_zero_kl() -> Result<(bool, String)> {
    first_failure(all_up_to(3, 4), |l| kostka_q0_check(l, l.weight() as usize + 1))
}

fn specialization() -> Result<(bool, String)> {
    first_failure(all_up_to(3, 4), |mu| specialization_check(mu, 5))
}

fn eigenvalues() -> Result<(bool, String)> {
    first_failure(all_up_to(2, 3), |l| eigen_check(l, 3))
}

fn duality() -> Result<(bool, String)> {
    first_failure(all_up_to(3, 4), |l| duality_check(l, 5))
}

fn marked_sums() -> Result<(bool, String)> {
    first_failure(all_up_to(3, 3), |l| marked_sum_check(l, 4))
}

fn marked_decomposition() -> Result<(bool, String)> {
    let mut count = 0;
    for d in 0..=3 {
        for lam in Composition::all_of_weight(d, d as usize + 1) {
            for mu in Composition::all_of_weight(d, 2) {
                count += 1;
                if !marked_decomposition_check(&lam, &mu)? {
                    return Ok((false, format!("fails at ({lam}), ({mu})")));
                }
            }
        }
    }
    Ok((true, format!("{count} cases")))
}

fn lusztig() -> Result<(bool, String)> {
    let n = 5;
    let parts = (0..=3).flat_map(Composition::partitions_of);
    first_failure(parts, |l| Ok(schur(l, n)?.to_module()? == *kl_element(l, n)?.element))
}

fn scan_shallow() -> Result<(bool, String)> {
    scan_summary(3, None)
}

/// The default length bound at weight 5 means rank 12, which needs more
/// memory than a laptop has; length 4 keeps it near a gigabyte.
fn scan_deep() -> Result<(bool, String)> {
    scan_summary(5, Some(4))
}

fn scan_summary(max_weight: u32, max_len: Option<usize>) -> Result<(bool, String)> {
    let r = scan(&ScanOptions { max_weight, max_len, marked: true, ..Default::default() })?;
    Ok((r.is_clean(), format!("{} pairs, {} violations", r.pairs, r.violations.len())))
}

const SHALLOW: &[Check] = &[
    ("worked example K_(3,1),(2,2)", worked_example),
    ("q = 0 gives KL coefficients", q_zero_kl),
    ("Psi(E) at q = 0 is M^mu", specialization),
    ("Cherednik eigenvalues", eigenvalues),
    ("duality of E", duality),
    ("marked sum reproduces E", marked_sums),
    ("marked decomposition of K", marked_decomposition),
    ("Schur polynomials are KL elements", lusztig),
    ("positivity scan to weight 3", scan_shallow),
];

/// Runs the invariant suites; `deep` adds a weight-5 scan over compositions
/// of length at most 4.
pub fn run(deep: bool) -> Vec<Outcome> {
    let mut checks: Vec<Check> = SHALLOW.to_vec();
    if deep {
        checks.push(("positivity scan to weight 5, length <= 4", scan_deep));
    }
    checks
        .into_iter()
        .map(|(name, f)| {
            let t = Instant::now();
            let conjecture = name.starts_with("positivity");
            let (passed, conjecture, detail) = match f() {
                Ok((passed, detail)) => (passed, conjecture, detail),
                Err(e) => (false, false, format!("error: {e}")),
            };
            Outcome { name, passed, conjecture, detail, seconds: t.elapsed().as_secs_f64() }
        })
        .collect()
}

//! Kazhdan–Lusztig basis elements `M̲^λ` of the polynomial parabolic module.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, LazyLock};

use num_traits::Zero;

use crate::bruhat::min_rep_length;
use crate::coeff::{CoeffPoly, Monomial};
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::parabolic::{bar_basis, ModuleElement};

static KL: LazyLock<Memo<(usize, Composition), ModuleElement>> = LazyLock::new(Memo::new);

#[derive(Clone, Debug)]
pub struct KlElement {
    pub lambda: Composition,
    pub rank: usize,
    pub element: Arc<ModuleElement>,
}

/// The unique `p ∈ vZ[v]` with `p - p̄ = g`, for a `q`-free bar-skew `g`.
pub fn skew_positive_part(g: &CoeffPoly) -> Result<CoeffPoly> {
    if !g.is_q_free() {
        return Err(Error::Consistency(format!("q occurs in a KL coefficient equation: {g:?}")));
    }
    if !g.constant_term().is_zero() {
        return Err(Error::Consistency(format!("nonzero constant term in {g:?}")));
    }
    if g.bar() != -g {
        return Err(Error::Consistency(format!("right-hand side {g:?} is not bar-skew")));
    }
    let mut p = CoeffPoly::zero();
    for (m, c) in g.terms() {
        if m.v > 0 {
            p.add_term(Monomial::new(m.v, 0), c.clone());
        }
    }
    Ok(p)
}

/// A rank at which `M̲^λ` carries every coefficient needed at level `m`.
pub fn default_rank(lambda: &Composition, m: usize) -> usize {
    (m.max(lambda.partition_length()) + lambda.weight() as usize + 1).max(lambda.length()).max(2)
}

/// `M̲^λ` at rank `n`: the self-dual element `M^λ + Σ_{μ≺λ} p_μ M^μ`,
/// `p_μ ∈ vZ[v]`.
pub fn kl_element(lambda: &Composition, n: usize) -> Result<KlElement> {
    if n < lambda.length().max(2) {
        return Err(Error::RankTooSmall { rank: n, needed: lambda.length().max(2) });
    }
    let element = KL.get_or_try_insert(&(n, lambda.clone()), || solve(lambda, n))?;
    Ok(KlElement { lambda: lambda.clone(), rank: n, element })
}

fn solve(lambda: &Composition, n: usize) -> Result<ModuleElement> {
    // Close the support under the rows of the bar matrix d(M^μ) = Σ r_μν M^ν.
    let mut rows: HashMap<Composition, Arc<ModuleElement>> = HashMap::new();
    let mut stack = vec![lambda.clone()];
    while let Some(mu) = stack.pop() {
        if rows.contains_key(&mu) {
            continue;
        }
        let row = bar_basis(n, &mu)?;
        for nu in row.support() {
            if !rows.contains_key(nu) {
                stack.push(nu.clone());
            }
        }
        rows.insert(mu, row);
    }

    let mut order: Vec<(u64, Composition)> = rows.keys().map(|mu| (min_rep_length(mu, n), mu.clone())).collect();
    order.sort_by(|a, b| b.cmp(a));
    if order[0].1 != *lambda {
        return Err(Error::Consistency(format!("({lambda}) is not the longest element of its bar closure")));
    }

    let lengths: HashMap<&Composition, u64> = order.iter().map(|(len, mu)| (mu, *len)).collect();
    let mut out = ModuleElement::zero(n);
    // acc[ν] = Σ_{μ solved} p̄_μ r_μν
    let mut acc = ModuleElement::zero(n);
    let mut solved: BTreeSet<Composition> = BTreeSet::new();
    for (len, nu) in &order {
        let p = if nu == lambda {
            CoeffPoly::one()
        } else {
            skew_positive_part(&acc.coefficient(nu))?
        };
        let row = &rows[nu];
        for target in row.support() {
            if target != nu && (solved.contains(target) || lengths[target] >= *len) {
                return Err(Error::Consistency(format!("d(M^{nu}) meets M^{target} out of order")));
            }
        }
        if row.coefficient(nu) != CoeffPoly::one() {
            return Err(Error::Consistency(format!("d(M^{nu}) is not unitriangular")));
        }
        if !p.is_zero() {
            acc.add_scaled(row, &p.bar());
            out.add_term(nu.clone(), p);
        }
        solved.insert(nu.clone());
    }

    if out.bar_d()? != out {
        return Err(Error::Consistency(format!("M̲^{lambda} at rank {n} is not self-dual")));
    }
    Ok(out)
}

pub fn clear_caches() {
    KL.clear();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::preceq;

    fn c(p: &[u32]) -> Composition {
        Composition::new(p.to_vec())
    }

    fn cp(terms: &[(i64, i32)]) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for &(k, v) in terms {
            out += &CoeffPoly::monomial(k, v, 0);
        }
        out
    }

    #[test]
    fn skew_part_examples() {
        assert_eq!(skew_positive_part(&cp(&[(1, 1), (-1, -1)])).unwrap(), cp(&[(1, 1)]));
        let g = cp(&[(1, 2), (1, 1), (-1, -1), (-1, -2)]);
        assert_eq!(skew_positive_part(&g).unwrap(), cp(&[(1, 2), (1, 1)]));
        assert!(skew_positive_part(&CoeffPoly::zero()).unwrap().is_zero());
        assert!(skew_positive_part(&cp(&[(1, 1)])).is_err());
        assert!(skew_positive_part(&cp(&[(1, 0)])).is_err());
    }

    #[test]
    fn element_examples() {
        assert_eq!(*kl_element(&c(&[]), 2).unwrap().element, ModuleElement::basis(2, c(&[])).unwrap());
        assert_eq!(*kl_element(&c(&[0, 1]), 2).unwrap().element, ModuleElement::basis(2, c(&[0, 1])).unwrap());
        let mut expect = ModuleElement::basis(2, c(&[1])).unwrap();
        expect.add_term(c(&[0, 1]), CoeffPoly::v());
        assert_eq!(*kl_element(&c(&[1, 0]), 2).unwrap().element, expect);
    }

    #[test]
    fn typed_invariants_and_symmetry() {
        let n = 5;
        for d in 0..=4 {
            for lam in Composition::all_of_weight(d, n) {
                let kl = kl_element(&lam, n).unwrap();
                let x = &kl.element;
                assert_eq!(x.coefficient(&lam), CoeffPoly::one());
                for (mu, p) in x.terms() {
                    if *mu != lam {
                        assert!(p.is_q_free() && p.min_v_exponent().unwrap() >= 1, "{lam}: {mu} {p:?}");
                        assert!(preceq(mu, &lam), "{mu} in M̲^{lam}");
                    }
                }
                for i in 1..n {
                    if lam.part(i) >= lam.part(i + 1) {
                        let h = x.apply_h(i).unwrap();
                        assert_eq!(h, x.scale(&CoeffPoly::v_pow(-1)), "H_{i} on M̲^{lam}");
                    }
                }
            }
        }
    }

    #[test]
    fn stable_under_projection() {
        for d in 0..=3 {
            for lam in Composition::all_of_weight(d, 4) {
                let big = kl_element(&lam, 5).unwrap();
                let small = kl_element(&lam, 4).unwrap();
                assert_eq!(big.element.project().unwrap(), *small.element, "{lam}");
            }
            for lam in Composition::all_of_weight(d, 5).into_iter().filter(|l| l.length() == 5) {
                assert!(kl_element(&lam, 5).unwrap().element.project().unwrap().is_zero());
            }
        }
    }
}

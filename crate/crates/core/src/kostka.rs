//! m-symmetric expansions, the stable scalar product and composition Kostka
//! functions `K_{λμ}(q,t) = ⟨M̲^λ, Ψ(Ẽ_μ)⟩`.

use std::collections::BTreeMap;
use std::sync::{Arc, LazyLock};

use serde::{Deserialize, Serialize};

use crate::coeff::CoeffPoly;
use crate::composition::{Composition, MarkedDiagram};
use crate::error::{Error, Result};
use crate::kl::kl_element;
use crate::macdonald::{e_tilde_element, marked_e, marked_e_all};
use crate::memo::Memo;
use crate::parabolic::ModuleElement;
use crate::polyrep::ZPoly;
use crate::tableaux::{kostka_foulkes, schur};

type ExpansionKey = (Composition, usize, usize);

static KL_EXPANSIONS: LazyLock<Memo<ExpansionKey, MSymExpansion>> = LazyLock::new(Memo::new);
static E_EXPANSIONS: LazyLock<Memo<ExpansionKey, MSymExpansion>> = LazyLock::new(Memo::new);
static VALUES: LazyLock<Memo<(Composition, Composition), KostkaResult>> = LazyLock::new(Memo::new);

/// `Σ_τ c_τ M^{τ|m}` over `τ ∈ Λ(m)`, i.e. with weakly decreasing `τ_{>m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSymExpansion {
    pub m: usize,
    pub rank: usize,
    pub terms: BTreeMap<Composition, CoeffPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KostkaResult {
    pub lambda: Composition,
    pub mu: Composition,
    pub value: CoeffPoly,
    pub m: usize,
    pub n: usize,
    /// No negative powers of `v`.
    pub is_polynomial_in_v: bool,
    /// All coefficients nonnegative.
    pub is_nonneg: bool,
}

impl KostkaResult {
    pub fn new(lambda: &Composition, mu: &Composition, value: CoeffPoly, m: usize, n: usize) -> Self {
        KostkaResult {
            lambda: lambda.clone(),
            mu: mu.clone(),
            is_polynomial_in_v: value.is_v_polynomial(),
            is_nonneg: value.is_nonneg(),
            value,
            m,
            n,
        }
    }
}

/// The representative of the `S_{>m}`-orbit of `τ`: tail sorted decreasingly.
pub fn orbit_representative(tau: &Composition, m: usize) -> Composition {
    tau.with_tail(m, tau.tail(m).sorted_desc().parts())
}

/// Expands an m-symmetric element in the `M^{τ|m}` basis, verifying
/// `a_τ = v^{ℓ(w^τ) - ℓ(w^ρ)} a_ρ` across every orbit.
pub fn msym_expand(x: &ModuleElement, m: usize) -> Result<MSymExpansion> {
    let n = x.rank();
    let mut terms = BTreeMap::new();
    for tau in x.support() {
        let rep = orbit_representative(tau, m);
        if terms.contains_key(&rep) {
            continue;
        }
        let a = x.coefficient(&rep);
        let base = rep.inversions() as i32;
        let tail = rep.tail(m);
        for perm in tail.rearrangements(n.saturating_sub(m)) {
            let member = rep.with_tail(m, perm.parts());
            let expect = a.shift(member.inversions() as i32 - base, 0);
            let got = x.coefficient(&member);
            if got != expect {
                return Err(Error::MSymmetryViolation {
                    m,
                    detail: format!("coefficient {got:?} at M^({member}), expected {expect:?} from M^({rep})"),
                });
            }
        }
        terms.insert(rep, a);
    }
    Ok(MSymExpansion { m, rank: n, terms })
}

/// `⟨x, y⟩ = Σ_τ x_τ · (y_τ / b_{τ>m}(t))`, each quotient exact.
pub fn pair(x: &MSymExpansion, y: &MSymExpansion) -> Result<CoeffPoly> {
    if x.m != y.m {
        return Err(Error::InvalidInput(format!("pairing m = {} against m = {}", x.m, y.m)));
    }
    let mut out = CoeffPoly::zero();
    for (tau, a) in &x.terms {
        let Some(b) = y.terms.get(tau) else { continue };
        let denom = CoeffPoly::b_partition(&tau.tail(x.m))?;
        out += &(a * &b.exact_div(&denom)?);
    }
    Ok(out)
}

/// The finite-rank pairing in which the `M^τ` are orthonormal.
pub fn pair_truncated(x: &ModuleElement, y: &ModuleElement) -> Result<CoeffPoly> {
    if x.rank() != y.rank() {
        return Err(Error::InvalidInput(format!("pairing rank {} against rank {}", x.rank(), y.rank())));
    }
    let mut out = CoeffPoly::zero();
    for (tau, a) in x.terms() {
        out += &(a * &y.coefficient(tau));
    }
    Ok(out)
}

/// The orbit sum `M^{λ|m}` at rank `n`.
pub fn orbit_sum(lambda: &Composition, m: usize, n: usize) -> Result<ModuleElement> {
    if lambda.length() > n {
        return Err(Error::RankTooSmall { rank: n, needed: lambda.length() });
    }
    let mut out = ModuleElement::zero(n);
    for perm in lambda.tail(m).rearrangements(n.saturating_sub(m)) {
        let tau = lambda.with_tail(m, perm.parts());
        let ell = tau.inversions() as i32;
        out.add_term(tau, CoeffPoly::v_pow(ell));
    }
    Ok(out)
}

/// Working level and rank for the pair `(λ, μ)`.
pub fn working_rank(lambda: &Composition, mu_shape: &Composition) -> (usize, usize) {
    let m = lambda.partition_length().max(mu_shape.length());
    let n = (m + lambda.weight() as usize + 1).max(2);
    (m, n)
}

fn kl_expansion(lambda: &Composition, m: usize, n: usize) -> Result<Arc<MSymExpansion>> {
    KL_EXPANSIONS.get_or_try_insert(&(lambda.clone(), m, n), || msym_expand(&kl_element(lambda, n)?.element, m))
}

fn e_expansion(mu: &Composition, m: usize, n: usize) -> Result<Arc<MSymExpansion>> {
    E_EXPANSIONS.get_or_try_insert(&(mu.clone(), m, n), || msym_expand(&*e_tilde_element(mu, n)?, m))
}

/// `K_{λμ}` at a fixed level and rank, without the stability recheck.
pub fn kostka_at(lambda: &Composition, mu: &Composition, m: usize, n: usize) -> Result<CoeffPoly> {
    if lambda.weight() != mu.weight() {
        return Ok(CoeffPoly::zero());
    }
    pair(&*kl_expansion(lambda, m, n)?, &*e_expansion(mu, m, n)?)
}

/// `K_{λμ}(q,t)`, confirmed stable under `n → n + 1`.
pub fn kostka(lambda: &Composition, mu: &Composition) -> Result<KostkaResult> {
    let key = (lambda.clone(), mu.clone());
    let result = VALUES.get_or_try_insert(&key, || {
        let (m, n) = working_rank(lambda, mu);
        if lambda.weight() != mu.weight() {
            return Ok(KostkaResult::new(lambda, mu, CoeffPoly::zero(), m, n));
        }
        let value = kostka_at(lambda, mu, m, n)?;
        let again = kostka_at(lambda, mu, m, n + 1)?;
        if value != again {
            return Err(Error::Consistency(format!(
                "K_({lambda}),({mu}) changes between rank {n} and {}: {value:?} vs {again:?}",
                n + 1
            )));
        }
        Ok(KostkaResult::new(lambda, mu, value, m, n))
    })?;
    Ok((*result).clone())
}

/// Drops the memoized expansions and values.
pub fn clear_caches() {
    KL_EXPANSIONS.clear();
    E_EXPANSIONS.clear();
    VALUES.clear();
}

/// `K_{λμ}(0,t)` equals the `M^μ` coefficient of `M̲^λ` for every `μ` of
/// the same weight and length at most `max_len`.
pub fn kostka_q0_check(lambda: &Composition, max_len: usize) -> Result<bool> {
    let (_, n) = working_rank(lambda, &Composition::empty());
    let kl = kl_element(lambda, n.max(max_len + 1))?;
    for mu in Composition::all_of_weight(lambda.weight(), max_len) {
        let k = kostka(lambda, &mu)?.value.specialize_q0()?;
        if k != kl.element.coefficient(&mu) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `K_{λμ̄}(t) = t^{L} ⟨M̲^λ, Ψ(Ẽ_{μ̄})⟩`, asserted free of `q`.
pub fn marked_kostka(lambda: &Composition, d: &MarkedDiagram) -> Result<CoeffPoly> {
    let shape = d.shape();
    if lambda.weight() != shape.weight() {
        return Ok(CoeffPoly::zero());
    }
    let (m, n) = working_rank(lambda, shape);
    let x = msym_expand(&kl_element(lambda, n)?.element, m)?;
    marked_value(&x, &marked_e(d, n)?, d, m)
}

fn marked_value(kl: &MSymExpansion, e: &ModuleElement, d: &MarkedDiagram, m: usize) -> Result<CoeffPoly> {
    let (_, l) = d.marking_stats();
    let value = pair(kl, &msym_expand(e, m)?)?.shift(2 * l as i32, 0);
    if !value.is_q_free() {
        return Err(Error::Consistency(format!("marked Kostka value at {d} involves q: {value:?}")));
    }
    Ok(value)
}

/// One row of a marked decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedTerm {
    pub diagram: MarkedDiagram,
    pub a: u32,
    pub l: u32,
    pub value: CoeffPoly,
}

/// `K_{λμ̄}(t)` for every marking of `μ`, indexed by marking mask.
pub fn marked_table(lambda: &Composition, mu: &Composition) -> Result<Vec<MarkedTerm>> {
    let (m, n) = working_rank(lambda, mu);
    let kl = msym_expand(&kl_element(lambda, n)?.element, m)?;
    let all = marked_e_all(mu, n)?;
    let mut out = Vec::with_capacity(all.len());
    for (mask, e) in all.iter().enumerate() {
        let d = MarkedDiagram::from_mask(mu.clone(), mask as u64)?;
        let (a, l) = d.marking_stats();
        let value = if lambda.weight() == mu.weight() { marked_value(&kl, e, &d, m)? } else { CoeffPoly::zero() };
        out.push(MarkedTerm { diagram: d, a, l, value });
    }
    Ok(out)
}

/// `K_{λμ} = Σ_S q^{A_S} K_{λμ̄_S}`.
pub fn marked_decomposition_check(lambda: &Composition, mu: &Composition) -> Result<bool> {
    let mut total = CoeffPoly::zero();
    for term in marked_table(lambda, mu)? {
        total += &term.value.shift(0, term.a as i32);
    }
    Ok(total == kostka(lambda, mu)?.value)
}

/// `K_{λμ}` with `M̲^λ` replaced by the image of the Schur polynomial.
pub fn kostka_via_schur(lambda: &Composition, mu: &Composition) -> Result<CoeffPoly> {
    if !lambda.is_partition() {
        return Err(Error::InvalidInput(format!("({lambda}) is not a partition")));
    }
    if lambda.weight() != mu.weight() {
        return Ok(CoeffPoly::zero());
    }
    let (m, n) = working_rank(lambda, mu);
    let s: ZPoly = schur(lambda, n)?;
    let e = e_tilde_element(mu, n)?;
    pair(&msym_expand(&s.to_module()?, m)?, &msym_expand(&e, m)?)
}

/// Kostka–Foulkes polynomial by the charge statistic.
pub fn charge_oracle(lambda: &Composition, mu: &Composition) -> Result<CoeffPoly> {
    kostka_foulkes(lambda, mu)
}

/// `K_{λ, s_i μ} = v K_{λμ}` whenever `λ_i ≥ λ_{i+1}` and `μ_i > μ_{i+1}`.
/// Returns the triples `(λ, μ, i)` that were checked, failing on the first
/// mismatch.
pub fn mpart_check(lambda: &Composition, mu: &Composition) -> Result<Vec<usize>> {
    let mut checked = Vec::new();
    let top = mu.length().max(lambda.length());
    let base = kostka(lambda, mu)?.value;
    for i in 1..=top {
        if lambda.part(i) >= lambda.part(i + 1) && mu.part(i) > mu.part(i + 1) {
            let swapped = kostka(lambda, &mu.swap(i))?.value;
            if swapped != base.shift(1, 0) {
                return Err(Error::Consistency(format!(
                    "K_({lambda}),s_{i}({mu}) = {swapped:?} but v K_({lambda}),({mu}) = {:?}",
                    base.shift(1, 0)
                )));
            }
            checked.push(i);
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::Cell;

    fn c(p: &[u32]) -> Composition {
        Composition::new(p.to_vec())
    }

    fn tq(terms: &[(i64, i32, i32)]) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for &(k, t, q) in terms {
            out += &CoeffPoly::monomial(k, 2 * t, q);
        }
        out
    }

    #[test]
    fn msym_examples() {
        let kl = kl_element(&c(&[1, 0]), 3).unwrap();
        let x = msym_expand(&kl.element, 1).unwrap();
        assert_eq!(x.terms.len(), 2);
        assert!(x.terms[&c(&[1])].is_one());
        assert_eq!(x.terms[&c(&[0, 1])], CoeffPoly::v());

        let e = e_tilde_element(&c(&[1]), 3).unwrap();
        let y = msym_expand(&e, 1).unwrap();
        assert_eq!(y.terms[&c(&[1])], tq(&[(1, 0, 0), (-1, 1, 1)]));
        let expect = CoeffPoly::monomial(-1, 2, 1) * CoeffPoly::v_minus_vinv();
        assert_eq!(y.terms[&c(&[0, 1])], expect);
        assert_eq!(pair(&x, &y).unwrap(), CoeffPoly::one());

        let zero = msym_expand(&ModuleElement::basis(3, c(&[])).unwrap(), 0).unwrap();
        assert!(zero.terms[&c(&[])].is_one());
        let empty = MSymExpansion { m: 1, rank: 3, terms: BTreeMap::new() };
        assert!(pair(&x, &empty).unwrap().is_zero());
    }

    #[test]
    fn msym_rejects_asymmetric() {
        let x = ModuleElement::basis(3, c(&[0, 1])).unwrap();
        assert!(matches!(msym_expand(&x, 1), Err(Error::MSymmetryViolation { .. })));
        assert!(msym_expand(&x, 2).is_ok());
    }

    #[test]
    fn pair_needs_exact_division() {
        let x = MSymExpansion { m: 0, rank: 3, terms: BTreeMap::from([(c(&[1]), CoeffPoly::one())]) };
        assert!(matches!(pair(&x, &x), Err(Error::NonExactDivision)));
    }

    #[test]
    fn truncated_pairing() {
        for (n, k) in [(3, 3), (4, 4)] {
            let x = orbit_sum(&c(&[1]), 0, n).unwrap();
            let expect: CoeffPoly = (0..k).map(CoeffPoly::t_pow).fold(CoeffPoly::zero(), |a, b| a + b);
            assert_eq!(pair_truncated(&x, &x).unwrap(), expect);
        }
        let one = ModuleElement::basis(3, c(&[])).unwrap();
        assert!(pair_truncated(&one, &one).unwrap().is_one());
    }

    #[test]
    fn kostka_examples() {
        assert!(kostka(&c(&[1]), &c(&[1])).unwrap().value.is_one());
        assert!(kostka(&c(&[1]), &c(&[2])).unwrap().value.is_zero());
        let k = kostka(&c(&[3, 1]), &c(&[2, 2])).unwrap();
        assert_eq!(k.value, tq(&[(1, 1, 0), (1, 1, 1), (1, 2, 1)]));
        assert_eq!(k.value.to_string(), "t + t*q + t^2*q");
        assert!(k.is_nonneg && k.is_polynomial_in_v);
    }

    #[test]
    fn weight_two_table() {
        assert!(kostka(&c(&[2]), &c(&[2])).unwrap().value.is_one());
        assert_eq!(kostka(&c(&[2]), &c(&[1, 1])).unwrap().value, CoeffPoly::t());
        assert_eq!(kostka(&c(&[1, 1]), &c(&[2])).unwrap().value, CoeffPoly::q());
        assert!(kostka(&c(&[1, 1]), &c(&[1, 1])).unwrap().value.is_one());
    }

    #[test]
    fn marked_examples() {
        let lam = c(&[3, 1]);
        let shape = c(&[2, 2]);
        let cases = [
            (vec![], tq(&[(1, 1, 0)])),
            (vec![Cell::new(1, 2)], tq(&[(1, 2, 0)])),
            (vec![Cell::new(2, 2)], tq(&[(1, 1, 0)])),
        ];
        for (marked, expect) in cases {
            let d = MarkedDiagram::new(shape.clone(), marked).unwrap();
            assert_eq!(marked_kostka(&lam, &d).unwrap(), expect, "{d}");
        }
        let both = MarkedDiagram::new(shape.clone(), [Cell::new(1, 2), Cell::new(2, 2)]).unwrap();
        assert!(marked_kostka(&lam, &both).unwrap().is_zero());
        assert!(marked_decomposition_check(&lam, &shape).unwrap());
        assert!(marked_decomposition_check(&c(&[1]), &c(&[1])).unwrap());
        assert!(marked_decomposition_check(&c(&[2]), &c(&[1, 1])).unwrap());
    }

    #[test]
    fn q0_examples() {
        assert!(kostka_q0_check(&c(&[]), 1).unwrap());
        assert!(kostka_q0_check(&c(&[1, 0]), 3).unwrap());
        assert!(kostka_q0_check(&c(&[2, 1]), 4).unwrap());
    }

    #[test]
    fn schur_pipeline_agrees() {
        assert!(kostka_via_schur(&c(&[1]), &c(&[1])).unwrap().is_one());
        for (l, m) in [(c(&[2]), c(&[1, 1])), (c(&[1, 1]), c(&[2]))] {
            assert_eq!(kostka_via_schur(&l, &m).unwrap(), kostka(&l, &m).unwrap().value);
        }
    }

    #[test]
    fn charge_oracle_examples() {
        assert_eq!(charge_oracle(&c(&[2]), &c(&[1, 1])).unwrap(), CoeffPoly::t());
        assert!(charge_oracle(&c(&[1, 1]), &c(&[1, 1])).unwrap().is_one());
        assert!(charge_oracle(&c(&[1, 1]), &c(&[2])).unwrap().is_zero());
    }

    #[test]
    fn mpart_small() {
        let checked = mpart_check(&c(&[2, 1]), &c(&[2, 1])).unwrap();
        assert_eq!(checked, vec![1, 2]);
    }
}

//! Non-symmetric Macdonald polynomials `Ẽ_λ = v^{ℓ(w^λ)} E_λ` in the
//! standard basis, their marked refinements, and the identities they obey.

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, LazyLock};

use crate::coeff::CoeffPoly;
use crate::composition::{Composition, MarkedDiagram};
use crate::error::{Error, Result};
use crate::memo::Memo;
use crate::parabolic::ModuleElement;
use crate::polyrep::ZPoly;

static E_TILDE: LazyLock<Memo<(usize, Composition), ModuleElement>> = LazyLock::new(Memo::new);

#[derive(Clone, Debug)]
pub struct MacdonaldResult {
    pub lambda: Composition,
    pub rank: usize,
    pub element: Arc<ModuleElement>,
    /// The `z^λ` coefficient `v^{ℓ(w^λ)} ∏_s (1 - q^{a(s)+1} t^{l(s)+1})`.
    pub normalization: CoeffPoly,
}

fn check_rank(lambda: &Composition, n: usize) -> Result<()> {
    let needed = lambda.length().max(2);
    if n < needed {
        return Err(Error::RankTooSmall { rank: n, needed });
    }
    Ok(())
}

/// `∏_{s ∈ λ} (1 - q^{a(s)+da} t^{l(s)+1})`.
pub fn hook_product(lambda: &Composition, da: i32) -> CoeffPoly {
    let mut out = CoeffPoly::one();
    for s in lambda.diagram() {
        let a = lambda.arm(s).expect("box in diagram") as i32;
        let l = lambda.leg(s).expect("box in diagram") as i32;
        out = &out * &(CoeffPoly::one() - CoeffPoly::monomial(1, 2 * (l + 1), a + da));
    }
    out
}

/// `Ẽ_λ` at rank `n`, from `Ẽ_λ = (Φ_m - q^{λ_m} t^a Φ̄_m) Ẽ_{λ*}`.
pub fn e_tilde_element(lambda: &Composition, n: usize) -> Result<Arc<ModuleElement>> {
    check_rank(lambda, n)?;
    E_TILDE.get_or_try_insert(&(n, lambda.clone()), || {
        if lambda.is_empty() {
            return ModuleElement::basis(n, Composition::empty());
        }
        let (star, m, a) = lambda.lambda_star()?;
        let prev = e_tilde_element(&star, n)?;
        let mut out = prev.apply_phi(m)?;
        let factor = CoeffPoly::monomial(-1, 2 * a as i32, lambda.part(m) as i32);
        out.add_scaled(&prev.apply_phibar(m)?, &factor);
        let lead = out.coefficient(lambda);
        if lead != hook_product(lambda, 1) {
            return Err(Error::Consistency(format!("leading coefficient of Ẽ_({lambda}) is {lead:?}")));
        }
        Ok(out)
    })
}

pub fn e_tilde(lambda: &Composition, n: usize) -> Result<MacdonaldResult> {
    let element = e_tilde_element(lambda, n)?;
    Ok(MacdonaldResult {
        lambda: lambda.clone(),
        rank: n,
        element,
        normalization: hook_product(lambda, 1).shift(lambda.inversions() as i32, 0),
    })
}

/// `Ẽ_λ` in the monomial basis, with the normalization and integrality
/// checks applied.
pub fn e_monomial(lambda: &Composition, n: usize) -> Result<ZPoly> {
    let res = e_tilde(lambda, n)?;
    let f = ZPoly::from_module(&res.element)?;
    let lead = f.coefficient(lambda);
    if lead != res.normalization {
        return Err(Error::Consistency(format!("z^({lambda}) coefficient {lead:?} of Ẽ_({lambda})")));
    }
    let ell = lambda.inversions() as i32;
    for (alpha, c) in f.terms() {
        let e = c.shift(-ell, 0);
        if !(e.is_v_polynomial() && e.has_even_v() && e.is_q_polynomial()) {
            return Err(Error::Consistency(format!("E_({lambda}) has coefficient {e:?} at z^({alpha})")));
        }
    }
    Ok(f)
}

/// The marked polynomial `Ẽ_{λ̄}`: `Φ_c` on unmarked and `-Φ̄_c` on marked
/// boxes, in box-enumeration order.
pub fn marked_e(d: &MarkedDiagram, n: usize) -> Result<ModuleElement> {
    check_rank(d.shape(), n)?;
    let mut x = ModuleElement::basis(n, Composition::empty())?;
    for (c, marked) in d.word() {
        x = if marked { x.apply_phibar(c)?.scale(&CoeffPoly::from(-1)) } else { x.apply_phi(c)? };
    }
    Ok(x)
}

/// All `2^{|λ|}` marked polynomials of shape `λ`, indexed by marking mask,
/// sharing work along common word prefixes.
pub fn marked_e_all(lambda: &Composition, n: usize) -> Result<Vec<ModuleElement>> {
    check_rank(lambda, n)?;
    let word = lambda.c_word();
    let mut layer = vec![ModuleElement::basis(n, Composition::empty())?];
    for (k, &c) in word.iter().enumerate() {
        let mut next = vec![ModuleElement::zero(n); layer.len() * 2];
        for (mask, x) in layer.iter().enumerate() {
            next[mask] = x.apply_phi(c)?;
            next[mask | 1 << k] = x.apply_phibar(c)?.scale(&CoeffPoly::from(-1));
        }
        layer = next;
    }
    Ok(layer)
}

/// `Ẽ_λ = Σ_S q^{A_S} t^{L_S} Ẽ_{λ̄_S}` over all markings.
pub fn marked_sum_check(lambda: &Composition, n: usize) -> Result<bool> {
    let all = marked_e_all(lambda, n)?;
    let mut total = ModuleElement::zero(n);
    for (mask, x) in all.iter().enumerate() {
        let (a, l) = MarkedDiagram::from_mask(lambda.clone(), mask as u64)?.marking_stats();
        total.add_scaled(x, &CoeffPoly::monomial(1, 2 * l as i32, a as i32));
    }
    Ok(total == *e_tilde_element(lambda, n)?)
}

/// The scalar `(-1)^{|λ|} q^{-A} t^{-B-ℓ(w^λ)}` with `d(Ẽ_λ)` equal to it
/// times `Ẽ_λ`.
pub fn duality_factor(lambda: &Composition) -> CoeffPoly {
    let a: u32 = lambda.parts().iter().map(|&x| x * (x + 1) / 2).sum();
    let b: usize = lambda.sorted_desc().parts().iter().enumerate().map(|(i, &x)| (i + 1) * x as usize).sum();
    let sign = if lambda.weight().is_multiple_of(2) { 1 } else { -1 };
    CoeffPoly::monomial(sign, -2 * (b + lambda.inversions()) as i32, -(a as i32))
}

pub fn duality_check(lambda: &Composition, n: usize) -> Result<bool> {
    let e = e_tilde_element(lambda, n)?;
    Ok(e.bar_d()? == e.scale(&duality_factor(lambda)))
}

/// `E_μ = v^{-ℓ(w^μ)} Ẽ_μ`.
pub fn e_normalized(mu: &Composition, n: usize) -> Result<ModuleElement> {
    Ok(e_tilde_element(mu, n)?.scale(&CoeffPoly::v_pow(-(mu.inversions() as i32))))
}

/// `(1 - f)(H_i - v^{-1}) E_μ = (v - v^{-1} f)(E_{s_i μ} - E_μ)` with
/// `f = q^{μ_i - μ_{i+1}} t^{w^μ(i+1) - w^μ(i)}`.
pub fn intertwiner_check(mu: &Composition, i: usize, n: usize) -> Result<bool> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    let smu = mu.swap(i);
    if smu == *mu {
        return Err(Error::InvalidInput(format!("s_{i} fixes ({mu})")));
    }
    let w = mu.sorting_data(n)?.images;
    let dq = mu.part(i) as i32 - mu.part(i + 1) as i32;
    let dt = w[i] as i32 - w[i - 1] as i32;
    let f = CoeffPoly::monomial(1, 2 * dt, dq);
    let e = e_normalized(mu, n)?;
    let mut lhs = e.apply_h(i)?;
    lhs.add_scaled(&e, &-CoeffPoly::v_pow(-1));
    let lhs = lhs.scale(&(CoeffPoly::one() - f.clone()));
    let mut diff = e_normalized(&smu, n)?;
    diff.add_scaled(&e, &CoeffPoly::from(-1));
    let rhs = diff.scale(&(CoeffPoly::v() - f.shift(-1, 0)));
    Ok(lhs == rhs)
}

/// The Cherednik eigenvalue `q^{λ_i} t^{1 - w^λ(i)}`.
pub fn eigenvalue(lambda: &Composition, i: usize, n: usize) -> Result<CoeffPoly> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, rank: n });
    }
    let w = lambda.sorting_data(n)?.images;
    Ok(CoeffPoly::monomial(1, 2 * (1 - w[i - 1] as i32), lambda.part(i) as i32))
}

/// `ξ_i(Ẽ_λ) = q^{λ_i} t^{1 - w^λ(i)} Ẽ_λ` for `i = 1, …, n`.
pub fn eigen_check(lambda: &Composition, n: usize) -> Result<bool> {
    let f = e_monomial(lambda, n)?;
    for i in 1..=n {
        if f.cherednik_xi(i)? != f.scale(&eigenvalue(lambda, i, n)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Ψ(Ẽ_μ)` at `q = 0` is the standard basis element `M^μ`.
pub fn specialization_check(mu: &Composition, n: usize) -> Result<bool> {
    Ok(e_tilde_element(mu, n)?.specialize_q0()? == ModuleElement::basis(n, mu.clone())?)
}

/// Whether every standard-basis coefficient of `Ẽ_λ` lies in `Z[v, q]`.
pub fn coefficients_v_polynomial(lambda: &Composition, n: usize) -> Result<bool> {
    Ok(e_tilde_element(lambda, n)?.terms().all(|(_, c)| c.is_v_polynomial() && c.is_q_polynomial()))
}

/// The symmetric Macdonald polynomial `J_μ`, obtained by symmetrizing
/// `E_{μ^-}` and normalizing so that the `z^μ` coefficient is
/// `∏_s (1 - q^{a(s)} t^{l(s)+1})`.
pub fn symmetric_j(mu: &Composition, n: usize) -> Result<ZPoly> {
    if !mu.is_partition() {
        return Err(Error::InvalidInput(format!("({mu}) is not a partition")));
    }
    check_rank(mu, n)?;
    let anti = mu.sorted_asc(n);
    let base = e_normalized(&anti, n)?;

    // Σ_w v^{ℓ(w)} H_w^{-1}(E_{μ^-}), walking S_n by right multiplication.
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let id: Vec<usize> = (1..=n).collect();
    let mut queue = VecDeque::from([(id.clone(), 0i32, base)]);
    seen.insert(id, ());
    let mut total = ModuleElement::zero(n);
    while let Some((w, len, x)) = queue.pop_front() {
        total.add_scaled(&x, &CoeffPoly::v_pow(len));
        for j in 1..n {
            if w[j - 1] < w[j] {
                let mut ws = w.clone();
                ws.swap(j - 1, j);
                if seen.insert(ws.clone(), ()).is_none() {
                    queue.push_back((ws, len + 1, x.apply_h_inv(j)?));
                }
            }
        }
    }

    let m = mu.length();
    let mut denom = CoeffPoly::one();
    // The q-power attached to t^{n-m+i} is the i-th smallest nonzero part.
    for i in 1..=m {
        let part = mu.part(m + 1 - i) as i32;
        denom = &denom * &(CoeffPoly::one() - CoeffPoly::monomial(1, 2 * (n - m + i) as i32, part));
    }
    denom = &denom * &CoeffPoly::phi((n - m) as u32);
    let numer_scale = (CoeffPoly::one() - CoeffPoly::t()).pow(n as u32);
    let s = ZPoly::from_module(&total)?;
    let mut out = ZPoly::zero(n);
    for (alpha, c) in s.terms() {
        out.add_term(alpha.clone(), (c * &numer_scale).exact_div(&denom)?);
    }
    if !out.is_symmetric() {
        return Err(Error::Consistency(format!("J_({mu}) is not symmetric")));
    }
    if out.coefficient(mu) != hook_product(mu, 0) {
        return Err(Error::Consistency(format!("J_({mu}) has leading coefficient {:?}", out.coefficient(mu))));
    }
    Ok(out)
}

pub fn clear_caches() {
    E_TILDE.clear();
}

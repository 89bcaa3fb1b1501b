//! Bruhat order on the weight lattice `Z^n` (through minimal coset
//! representatives) and its stable restriction to compositions.

use crate::composition::Composition;
use crate::error::{Error, Result};

/// `α_i(τ)`: `τ_i - τ_{i+1}` for `1 ≤ i < n`, and `τ_n - τ_1 + 1` for `i = 0`.
pub fn eval_root(i: usize, tau: &[i64]) -> i64 {
    let n = tau.len();
    assert!(i < n, "root index {i} out of range for rank {n}");
    if i == 0 {
        tau[n - 1] - tau[0] + 1
    } else {
        tau[i - 1] - tau[i]
    }
}

/// The simple affine reflection `s_i` acting on `τ`.
pub fn reflect(i: usize, tau: &[i64]) -> Vec<i64> {
    let n = tau.len();
    let mut out = tau.to_vec();
    if i == 0 {
        out[0] = tau[n - 1] + 1;
        out[n - 1] = tau[0] - 1;
    } else {
        out.swap(i - 1, i);
    }
    out
}

/// `ω(τ) = (τ_2, …, τ_n, τ_1 - 1)`.
pub fn omega(tau: &[i64]) -> Vec<i64> {
    let mut out = tau[1..].to_vec();
    out.push(tau[0] - 1);
    out
}

/// `ω^{-1}(τ) = (τ_n + 1, τ_1, …, τ_{n-1})`.
pub fn omega_inv(tau: &[i64]) -> Vec<i64> {
    let n = tau.len();
    let mut out = Vec::with_capacity(n);
    out.push(tau[n - 1] + 1);
    out.extend_from_slice(&tau[..n - 1]);
    out
}

/// Whether `m_τ ≤ m_η` in the Bruhat order of the extended affine Weyl group.
///
/// Walks `η` into the fundamental alcove by simple reflections with
/// `α(η) < 0`, carrying `τ` along as `min(τ, s_α τ)`, and strips the
/// length-zero rotation once `η` is alcove-dominant.
pub fn leq_affine(tau: &[i64], eta: &[i64]) -> Result<bool> {
    if tau.len() != eta.len() {
        return Err(Error::InvalidInput(format!("rank mismatch: {} vs {}", tau.len(), eta.len())));
    }
    let n = tau.len();
    if n < 2 {
        return Err(Error::RankTooSmall { rank: n, needed: 2 });
    }
    let sum = |x: &[i64]| x.iter().sum::<i64>();
    if sum(tau) != sum(eta) {
        return Ok(false);
    }
    let mut tau = tau.to_vec();
    let mut eta = eta.to_vec();
    loop {
        if eta.iter().all(|&x| x == 0) {
            return Ok(tau.iter().all(|&x| x == 0));
        }
        match (0..n).find(|&i| eval_root(i, &eta) < 0) {
            Some(i) => {
                if eval_root(i, &tau) < 0 {
                    tau = reflect(i, &tau);
                }
                eta = reflect(i, &eta);
            }
            None => {
                // `η` is dominant for the affine chamber, hence a rotation of 0.
                if sum(&eta) < 0 {
                    tau = omega_inv(&tau);
                    eta = omega_inv(&eta);
                } else {
                    tau = omega(&tau);
                    eta = omega(&eta);
                }
            }
        }
    }
}

/// `λ ⪯ μ`, i.e. `-λ ≤ -μ` at any rank `n ≥ max(l(λ), l(μ), 2)`.
pub fn preceq(lambda: &Composition, mu: &Composition) -> bool {
    if lambda.weight() != mu.weight() {
        return false;
    }
    let n = lambda.length().max(mu.length()).max(2);
    preceq_at(lambda, mu, n)
}

/// `λ ⪯ μ` evaluated at an explicit rank.
pub fn preceq_at(lambda: &Composition, mu: &Composition, n: usize) -> bool {
    let neg = |c: &Composition| c.padded(n).iter().map(|&x| -(x as i64)).collect::<Vec<i64>>();
    leq_affine(&neg(lambda), &neg(mu)).expect("equal ranks")
}

/// `w_τ(i) = #{j ≤ i : τ_j ≤ τ_i} + #{j > i : τ_j < τ_i}` (1-based values).
pub fn w_tau(tau: &[i64]) -> Vec<usize> {
    (0..tau.len())
        .map(|i| {
            tau[..=i].iter().filter(|&&x| x <= tau[i]).count() + tau[i + 1..].iter().filter(|&&x| x < tau[i]).count()
        })
        .collect()
}

/// `ℓ(t_τ w)` for a finite permutation `w` given by its 1-based images.
pub fn translation_length(tau: &[i64], w: &[usize]) -> u64 {
    let n = tau.len();
    let mut total = 0;
    for i in 0..n {
        for j in i + 1..n {
            let d = tau[i] - tau[j];
            total += if w[i] < w[j] { d.unsigned_abs() } else { (d - 1).unsigned_abs() };
        }
    }
    total
}

/// `ℓ(m_τ)` for an arbitrary weight `τ ∈ Z^n`.
pub fn min_rep_length_weight(tau: &[i64]) -> u64 {
    translation_length(tau, &w_tau(tau))
}

/// `ℓ(m_{-λ})` at rank `n`.
pub fn min_rep_length(lambda: &Composition, n: usize) -> u64 {
    let tau: Vec<i64> = lambda.padded(n).iter().map(|&x| -(x as i64)).collect();
    min_rep_length_weight(&tau)
}

//! Oracles for the integration tests. None of them call into the library's
//! algorithms: the symmetric-function side works in the power-sum basis over
//! exact rationals, and the Bruhat side searches the group directly.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use kostka::bruhat::{omega, omega_inv, reflect};
use kostka::{CoeffPoly, Composition};

pub type Q = BigRational;

pub fn c(parts: &[u32]) -> Composition {
    Composition::new(parts.to_vec())
}

pub fn rat(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn powi(x: &Q, e: i32) -> Q {
    let mut out = Q::one();
    for _ in 0..e.unsigned_abs() {
        out *= x;
    }
    if e < 0 {
        out.recip()
    } else {
        out
    }
}

/// Evaluates a library scalar at a point `(v, q)`.
pub fn eval(p: &CoeffPoly, v: &Q, q: &Q) -> Q {
    let mut out = Q::zero();
    for (m, coef) in p.terms() {
        out += Q::from_integer(coef.clone()) * powi(v, m.v) * powi(q, m.q);
    }
    out
}

/// Sample points `(v, q)`; `t = v^2`.
pub fn sample_points() -> Vec<(Q, Q)> {
    let mut out = Vec::new();
    for v in [rat(2, 1), rat(3, 1), rat(5, 2)] {
        for q in [rat(3, 1), rat(7, 1), rat(2, 3)] {
            out.push((v.clone(), q));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Symmetric functions of fixed degree

/// Partitions of `d` in increasing lexicographic order, so `(1^d)` first.
pub fn partitions(d: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            prefix.push(p);
            go(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out.reverse();
    out
}

fn factorial(k: u32) -> u64 {
    (1..=k as u64).product()
}

fn z(rho: &[u32]) -> u64 {
    let mut counts: HashMap<u32, u32> = HashMap::new();
    for &r in rho {
        *counts.entry(r).or_default() += 1;
    }
    counts.iter().map(|(&i, &m)| (i as u64).pow(m) * factorial(m)).product()
}

type Poly = HashMap<Vec<u32>, BigInt>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out
}

fn power_sum(k: u32, vars: usize) -> Poly {
    (0..vars)
        .map(|i| {
            let mut e = vec![0; vars];
            e[i] = k;
            (e, BigInt::one())
        })
        .collect()
}

fn invert(mut a: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut inv: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).expect("invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= &p;
            inv[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (a[col][j].clone(), inv[col][j].clone());
                    a[r][j] -= &f * x;
                    inv[r][j] -= &f * y;
                }
            }
        }
    }
    inv
}

/// Degree-`d` symmetric functions in the monomial basis, with scalar
/// products evaluated through power sums.
pub struct SymSpace {
    pub parts: Vec<Vec<u32>>,
    /// `m_λ = Σ_ρ m_to_p[λ][ρ] p_ρ`.
    m_to_p: Vec<Vec<Q>>,
}

pub type Sym = Vec<Q>;

impl SymSpace {
    pub fn new(d: u32) -> Self {
        let parts = partitions(d);
        let vars = d as usize;
        let p_to_m: Vec<Vec<Q>> = parts
            .iter()
            .map(|rho| {
                let mut f: Poly = HashMap::from([(vec![0; vars], BigInt::one())]);
                for &r in rho {
                    f = poly_mul(&f, &power_sum(r, vars));
                }
                parts
                    .iter()
                    .map(|lam| {
                        let mut e = lam.clone();
                        e.resize(vars, 0);
                        Q::from_integer(f.get(&e).cloned().unwrap_or_default())
                    })
                    .collect()
            })
            .collect();
        let m_to_p = invert(p_to_m);
        SymSpace { parts, m_to_p }
    }

    pub fn index(&self, lam: &[u32]) -> usize {
        self.parts.iter().position(|p| p == lam).expect("partition of this degree")
    }

    pub fn monomial(&self, lam: &[u32]) -> Sym {
        let mut out = vec![Q::zero(); self.parts.len()];
        out[self.index(lam)] = Q::one();
        out
    }

    fn to_p(&self, f: &Sym) -> Vec<Q> {
        (0..self.parts.len())
            .map(|r| f.iter().zip(&self.m_to_p).map(|(x, row)| x * &row[r]).sum())
            .collect()
    }

    /// `⟨p_ρ, p_σ⟩ = δ z_ρ ∏ (1 - q^{ρ_i}) / (1 - t^{ρ_i})`; `q = None` is
    /// the Hall-Littlewood product (`q = 0`), `q = Some(t)` the Hall product.
    pub fn inner(&self, f: &Sym, g: &Sym, q: Option<&Q>, t: &Q) -> Q {
        let (fp, gp) = (self.to_p(f), self.to_p(g));
        let mut out = Q::zero();
        for (r, rho) in self.parts.iter().enumerate() {
            let mut w = Q::from_integer(BigInt::from(z(rho)));
            for &k in rho {
                let num = match q {
                    Some(q) => Q::one() - powi(q, k as i32),
                    None => Q::one(),
                };
                w *= num / (Q::one() - powi(t, k as i32));
            }
            out += &fp[r] * &gp[r] * w;
        }
        out
    }

    /// Gram-Schmidt of the monomial basis from `(1^d)` upwards.
    fn orthogonalize(&self, q: Option<&Q>, t: &Q) -> Vec<Sym> {
        let mut out: Vec<Sym> = Vec::new();
        for lam in &self.parts {
            let mut f = self.monomial(lam);
            for g in &out {
                let c = self.inner(&f, g, q, t) / self.inner(g, g, q, t);
                for (x, y) in f.iter_mut().zip(g) {
                    *x -= &c * y;
                }
            }
            out.push(f);
        }
        out
    }

    pub fn macdonald_p(&self, q: &Q, t: &Q) -> Vec<Sym> {
        self.orthogonalize(Some(q), t)
    }

    /// Schur functions: the Hall product is the `q = t` case.
    pub fn schur(&self) -> Vec<Sym> {
        let t = rat(2, 1);
        self.orthogonalize(Some(&t), &t)
    }

    /// `J_μ = ∏_{s ∈ μ} (1 - q^{a(s)} t^{l(s)+1}) P_μ`.
    pub fn macdonald_j(&self, q: &Q, t: &Q) -> Vec<Sym> {
        self.macdonald_p(q, t)
            .into_iter()
            .zip(&self.parts)
            .map(|(p, mu)| {
                let c = hook_factor(mu, q, t);
                p.into_iter().map(|x| x * &c).collect()
            })
            .collect()
    }

    /// `K_{λμ}(q, t) = ⟨s_λ, J_μ⟩` under the Hall-Littlewood product,
    /// indexed like `parts`.
    pub fn qt_kostka(&self, q: &Q, t: &Q) -> Vec<Vec<Q>> {
        let s = self.schur();
        let j = self.macdonald_j(q, t);
        s.iter().map(|sl| j.iter().map(|jm| self.inner(sl, jm, None, t)).collect()).collect()
    }
}

fn hook_factor(mu: &[u32], q: &Q, t: &Q) -> Q {
    let mut out = Q::one();
    for (i, &row) in mu.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = mu[i + 1..].iter().filter(|&&r| r > j).count() as i32;
            out *= Q::one() - powi(q, arm as i32) * powi(t, leg + 1);
        }
    }
    out
}

/// `1/b_λ(t)` as a power series in `t`, coefficients of `t^0 .. t^{order-1}`.
pub fn inverse_b_series(lam: &[u32], order: usize) -> Vec<BigInt> {
    let mut counts: HashMap<u32, u32> = HashMap::new();
    for &p in lam.iter().filter(|&&p| p > 0) {
        *counts.entry(p).or_default() += 1;
    }
    let mut series = vec![BigInt::zero(); order];
    series[0] = BigInt::one();
    for &m in counts.values() {
        for i in 1..=m as usize {
            // multiply by 1/(1 - t^i) = Σ t^{ik}
            for k in i..order {
                let prev = series[k - i].clone();
                series[k] += prev;
            }
        }
    }
    series
}

// ---------------------------------------------------------------------------
// Extended affine Weyl group acting on Z^n

/// The affine map `x ↦ y` with `y[i] = x[perm[i]] + shift[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct AffineMap {
    perm: Vec<usize>,
    shift: Vec<i64>,
}

impl AffineMap {
    fn identity(n: usize) -> Self {
        AffineMap { perm: (0..n).collect(), shift: vec![0; n] }
    }

    /// Recovers the affine map from its values at `0` and the unit vectors.
    fn of(n: usize, f: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        let shift = f(&vec![0; n]);
        let mut perm = vec![usize::MAX; n];
        for j in 0..n {
            let mut e = vec![0; n];
            e[j] = 1;
            let image = f(&e);
            let moved: Vec<usize> = (0..n).filter(|&i| image[i] != shift[i]).collect();
            assert_eq!(moved.len(), 1);
            assert_eq!(image[moved[0]] - shift[moved[0]], 1);
            perm[moved[0]] = j;
        }
        AffineMap { perm, shift }
    }

    fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.perm.iter().zip(&self.shift).map(|(&p, s)| x[p] + s).collect()
    }

    /// `self ∘ g`.
    fn after(&self, g: &AffineMap) -> AffineMap {
        AffineMap {
            perm: self.perm.iter().map(|&p| g.perm[p]).collect(),
            shift: self.perm.iter().zip(&self.shift).map(|(&p, s)| g.shift[p] + s).collect(),
        }
    }
}

/// Bruhat order on minimal coset representatives by brute force: reduced
/// words from breadth-first search of the Coxeter part, then the subword
/// property.
pub struct BruhatOracle {
    n: usize,
    gens: Vec<AffineMap>,
    /// Reduced word (leftmost letter first) of the minimal element sending
    /// `0` to each point of coordinate sum zero.
    words: HashMap<Vec<i64>, Vec<usize>>,
}

impl BruhatOracle {
    /// Searches until every point of `points` has a minimal representative.
    pub fn new(n: usize, points: &[Vec<i64>]) -> Self {
        let gens: Vec<AffineMap> = (0..n).map(|i| AffineMap::of(n, |x| reflect(i, x))).collect();
        let wanted: HashSet<Vec<i64>> = points.iter().map(|p| Self::normalize(p)).collect();
        let mut words: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        let mut seen: HashSet<AffineMap> = HashSet::new();
        let mut queue = VecDeque::from([(AffineMap::identity(n), Vec::new())]);
        seen.insert(AffineMap::identity(n));
        while let Some((g, word)) = queue.pop_front() {
            words.entry(g.shift.clone()).or_insert_with(|| word.clone());
            if wanted.iter().all(|p| words.contains_key(p)) {
                break;
            }
            for (i, s) in gens.iter().enumerate() {
                let h = s.after(&g);
                if seen.insert(h.clone()) {
                    let mut w = vec![i];
                    w.extend_from_slice(&word);
                    queue.push_back((h, w));
                }
            }
        }
        BruhatOracle { n, gens, words }
    }

    /// Strips the length-zero part: `ω^{Σ τ} τ` has coordinate sum zero.
    pub fn normalize(tau: &[i64]) -> Vec<i64> {
        let mut x = tau.to_vec();
        let s: i64 = x.iter().sum();
        for _ in 0..s.abs() {
            x = if s > 0 { omega(&x) } else { omega_inv(&x) };
        }
        x
    }

    pub fn length(&self, tau: &[i64]) -> usize {
        self.words[&Self::normalize(tau)].len()
    }

    /// Points `u(0)` for every `u` below `m_η`, normalized.
    pub fn lower_set(&self, eta: &[i64]) -> HashSet<Vec<i64>> {
        let word = &self.words[&Self::normalize(eta)];
        let mut reach: HashSet<Vec<i64>> = HashSet::from([vec![0; self.n]]);
        for &i in word.iter().rev() {
            let next: Vec<Vec<i64>> = reach.iter().map(|x| self.gens[i].apply(x)).collect();
            reach.extend(next);
        }
        reach
    }

    pub fn leq(&self, tau: &[i64], eta: &[i64]) -> bool {
        let sum = |x: &[i64]| x.iter().sum::<i64>();
        sum(tau) == sum(eta) && self.lower_set(eta).contains(&Self::normalize(tau))
    }
}

/// Every vector in `[lo, hi]^n`.
pub fn box_points(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|p| (lo..=hi).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

//! The rank-`n` polynomial representation in the variables `z_1, …, z_n`:
//! Demazure–Lusztig operators, the twisted rotation `ω̃`, Cherednik
//! operators, and the transition to the parabolic module.

use std::collections::BTreeMap;
use std::fmt;

use crate::bruhat::min_rep_length;
use crate::coeff::CoeffPoly;
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::parabolic::{psi_monomial, ModuleElement};

/// A polynomial in `z_1, …, z_n` with coefficients in `Z[v^±1, q^±1]`,
/// keyed by exponent vectors.
#[derive(Clone, PartialEq, Eq)]
pub struct ZPoly {
    rank: usize,
    terms: BTreeMap<Composition, CoeffPoly>,
}

impl ZPoly {
    pub fn zero(rank: usize) -> Self {
        ZPoly { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(rank, Composition::empty(), CoeffPoly::one())
    }

    /// `coef · z^α`.
    pub fn monomial(rank: usize, alpha: Composition, coef: CoeffPoly) -> Self {
        assert!(alpha.length() <= rank, "exponent ({alpha}) exceeds rank {rank}");
        let mut out = Self::zero(rank);
        out.add_term(alpha, coef);
        out
    }

    /// The variable `z_i`.
    pub fn var(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i - 1] = 1;
        Self::monomial(rank, Composition::new(e), CoeffPoly::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, alpha: &Composition) -> CoeffPoly {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, alpha: Composition, coef: CoeffPoly) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &ZPoly, factor: &CoeffPoly) {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        for (a, c) in &other.terms {
            self.add_term(a.clone(), c * factor);
        }
    }

    pub fn scale(&self, factor: &CoeffPoly) -> ZPoly {
        let mut out = Self::zero(self.rank);
        out.add_scaled(self, factor);
        out
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut out = Self::zero(self.rank);
        for (a, c) in &self.terms {
            let pa = a.padded(self.rank);
            for (b, d) in &other.terms {
                let pb = b.padded(self.rank);
                let e: Vec<u32> = pa.iter().zip(&pb).map(|(x, y)| x + y).collect();
                out.add_term(Composition::new(e), c * d);
            }
        }
        out
    }

    /// Coefficientwise map, variables fixed.
    pub fn map_coefficients(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> ZPoly {
        let mut out = Self::zero(self.rank);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), f(c));
        }
        out
    }

    /// Permutes variables by an exponent map.
    fn map_exponents(&self, f: impl Fn(&[u32]) -> (Vec<u32>, i32)) -> ZPoly {
        let mut out = Self::zero(self.rank);
        for (a, c) in &self.terms {
            let (e, dq) = f(&a.padded(self.rank));
            out.add_term(Composition::new(e), c.shift(0, dq));
        }
        out
    }

    /// `s_i f`: exchanges `z_i` and `z_{i+1}`.
    pub fn swap_vars(&self, i: usize) -> ZPoly {
        self.map_exponents(|e| {
            let mut e = e.to_vec();
            e.swap(i - 1, i);
            (e, 0)
        })
    }

    /// `w_0 f`: reverses the variables.
    pub fn reverse_vars(&self) -> ZPoly {
        self.map_exponents(|e| (e.iter().rev().copied().collect(), 0))
    }

    /// `f ↦ z_{i+1} (f - s_i f) / (z_i - z_{i+1})`, evaluated monomial by
    /// monomial with the geometric-sum quotient.
    fn twisted_divided_difference(&self, i: usize) -> ZPoly {
        let mut out = Self::zero(self.rank);
        for (alpha, c) in &self.terms {
            let e = alpha.padded(self.rank);
            let (a, b) = (e[i - 1], e[i]);
            if a == b {
                continue;
            }
            let (hi, lo, sign) = if a > b { (a, b, c.clone()) } else { (b, a, -c) };
            // (z_i^hi z_{i+1}^lo - z_i^lo z_{i+1}^hi) / (z_i - z_{i+1})
            //   = z_i^lo z_{i+1}^lo Σ_{k=0}^{hi-lo-1} z_i^{hi-lo-1-k} z_{i+1}^k
            for k in 0..hi - lo {
                let mut f = e.clone();
                f[i - 1] = lo + (hi - lo - 1 - k);
                f[i] = lo + k + 1;
                out.add_term(Composition::new(f), sign.clone());
            }
        }
        out
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.rank {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank });
        }
        Ok(())
    }

    /// `H_i = v^{-1} s_i + (v - v^{-1}) z_{i+1} (1 - s_i) / (z_i - z_{i+1})`.
    pub fn hi_z(&self, i: usize) -> Result<ZPoly> {
        self.check_index(i)?;
        let mut out = self.swap_vars(i).scale(&CoeffPoly::v_pow(-1));
        out.add_scaled(&self.twisted_divided_difference(i), &CoeffPoly::v_minus_vinv());
        Ok(out)
    }

    /// `H_i^{-1} = H_i + (v - v^{-1})`.
    pub fn hi_inv_z(&self, i: usize) -> Result<ZPoly> {
        let mut out = self.hi_z(i)?;
        out.add_scaled(self, &CoeffPoly::v_minus_vinv());
        Ok(out)
    }

    /// `ω̃ f = f(q^{-1} z_n, z_1, …, z_{n-1})`.
    pub fn omega_tilde(&self) -> ZPoly {
        self.map_exponents(|e| {
            let mut out = e[1..].to_vec();
            out.push(e[0]);
            (out, -(e[0] as i32))
        })
    }

    /// `ω̃^{-1} f = f(z_2, …, z_n, q z_1)`.
    pub fn omega_tilde_inv(&self) -> ZPoly {
        let n = self.rank;
        self.map_exponents(|e| {
            let mut out = vec![e[n - 1]];
            out.extend_from_slice(&e[..n - 1]);
            (out, e[n - 1] as i32)
        })
    }

    /// The Cherednik operator
    /// `ξ_i = v^{1-n} H_{i-1} ⋯ H_1 ω̃^{-1} H_{n-1}^{-1} ⋯ H_i^{-1}`.
    pub fn cherednik_xi(&self, i: usize) -> Result<ZPoly> {
        let n = self.rank;
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, rank: n });
        }
        let mut f = self.clone();
        for j in i..n {
            f = f.hi_inv_z(j)?;
        }
        f = f.omega_tilde_inv();
        for j in 1..i {
            f = f.hi_z(j)?;
        }
        Ok(f.scale(&CoeffPoly::v_pow(1 - n as i32)))
    }

    /// `Ψ(f) = Σ_α f_α Ψ(z^α)`.
    pub fn to_module(&self) -> Result<ModuleElement> {
        let mut out = ModuleElement::zero(self.rank);
        for (a, c) in &self.terms {
            out.add_scaled(&*psi_monomial(a, self.rank)?, c);
        }
        Ok(out)
    }

    /// `Ψ^{-1}(x)`, peeling off Bruhat-maximal terms of the support.
    pub fn from_module(x: &ModuleElement) -> Result<ZPoly> {
        let n = x.rank();
        let mut rest = x.clone();
        let mut out = ZPoly::zero(n);
        let guard = 1 + rest.len() * 1000;
        for _ in 0..guard {
            let Some((mu, a)) = rest
                .terms()
                .max_by_key(|(mu, _)| (min_rep_length(mu, n), (*mu).clone()))
                .map(|(mu, a)| (mu.clone(), a.clone()))
            else {
                return Ok(out);
            };
            let coef = a.shift(mu.inversions() as i32, 0);
            rest.add_scaled(&*psi_monomial(&mu, n)?, &-&coef);
            if !rest.coefficient(&mu).is_zero() {
                return Err(Error::Consistency(format!("Ψ(z^{mu}) does not lead with M^{mu}")));
            }
            out.add_term(mu, coef);
        }
        Err(Error::Consistency("inverse transition did not terminate".into()))
    }

    /// The bar involution through `d(f) = v^{ℓ(w_0)} H_{w_0}(w_0 f̄)`.
    pub fn involution_check(&self) -> Result<ZPoly> {
        let n = self.rank;
        let mut f = self.map_coefficients(CoeffPoly::bar).reverse_vars();
        for k in 1..n {
            for j in (1..=k).rev() {
                f = f.hi_z(j)?;
            }
        }
        let len = (n * (n - 1) / 2) as i32;
        Ok(f.scale(&CoeffPoly::v_pow(len)))
    }

    /// Whether `f` is invariant under every variable exchange.
    pub fn is_symmetric(&self) -> bool {
        (1..self.rank).all(|i| self.swap_vars(i) == *self)
    }

    /// Human-readable form with the largest exponent vector first.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let use_t = self.terms.values().all(CoeffPoly::has_even_v);
        let mut parts = Vec::new();
        for (alpha, c) in self.terms.iter().rev() {
            let mono: Vec<String> = alpha
                .parts()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("z{}", i + 1) } else { format!("z{}^{e}", i + 1) })
                .collect();
            let mono = mono.join("*");
            let coef = c.to_string_with(use_t);
            parts.push(if mono.is_empty() {
                coef
            } else if c.is_one() {
                mono
            } else if c.len() == 1 {
                format!("{coef}*{mono}")
            } else {
                format!("({coef})*{mono}")
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}] ", self.rank)?;
        for (k, (a, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})*z^({a})")?;
        }
        Ok(())
    }
}

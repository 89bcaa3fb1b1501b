//! The polynomial part of the parabolic module at an explicit rank `n`.
//!
//! Elements are finite combinations of the standard basis `M^λ`, `l(λ) ≤ n`,
//! with coefficients in `Z[v^±1, q^±1]`. Operator words are always applied
//! right to left.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::coeff::CoeffPoly;
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::memo::Memo;

#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement {
    rank: usize,
    terms: BTreeMap<Composition, CoeffPoly>,
}

static PSI: LazyLock<Memo<(usize, Composition), ModuleElement>> = LazyLock::new(Memo::new);
static BAR: LazyLock<Memo<(usize, Composition), ModuleElement>> = LazyLock::new(Memo::new);

fn check_rank(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::RankTooSmall { rank: n, needed: 2 });
    }
    Ok(())
}

impl ModuleElement {
    pub fn zero(rank: usize) -> Self {
        ModuleElement { rank, terms: BTreeMap::new() }
    }

    /// The standard basis element `M^λ` at rank `n`.
    pub fn basis(rank: usize, lambda: Composition) -> Result<Self> {
        Self::monomial(rank, lambda, CoeffPoly::one())
    }

    pub fn monomial(rank: usize, lambda: Composition, coef: CoeffPoly) -> Result<Self> {
        check_rank(rank)?;
        if lambda.length() > rank {
            return Err(Error::RankTooSmall { rank, needed: lambda.length() });
        }
        let mut out = Self::zero(rank);
        out.add_term(lambda, coef);
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Composition, &CoeffPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, lambda: &Composition) -> CoeffPoly {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> impl Iterator<Item = &Composition> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, lambda: Composition, coef: CoeffPoly) {
        debug_assert!(lambda.length() <= self.rank);
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(lambda) {
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

    /// Adds `factor * other` in place.
    pub fn add_scaled(&mut self, other: &ModuleElement, factor: &CoeffPoly) {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        for (lam, c) in &other.terms {
            self.add_term(lam.clone(), c * factor);
        }
    }

    pub fn scale(&self, factor: &CoeffPoly) -> ModuleElement {
        let mut out = Self::zero(self.rank);
        out.add_scaled(self, factor);
        out
    }

    /// Coefficientwise map.
    pub fn map_coefficients(&self, f: impl Fn(&CoeffPoly) -> CoeffPoly) -> ModuleElement {
        let mut out = Self::zero(self.rank);
        for (lam, c) in &self.terms {
            out.add_term(lam.clone(), f(c));
        }
        out
    }

    /// The homogeneous degree, if all terms share one.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Composition::weight);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.rank {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank });
        }
        Ok(())
    }

    /// `H_i`, `1 ≤ i < n`.
    pub fn apply_h(&self, i: usize) -> Result<ModuleElement> {
        self.check_index(i)?;
        let mut out = Self::zero(self.rank);
        for (lam, c) in &self.terms {
            let (a, b) = (lam.part(i), lam.part(i + 1));
            if a < b {
                out.add_term(lam.swap(i), c.clone());
            } else if a == b {
                out.add_term(lam.clone(), c.shift(-1, 0));
            } else {
                out.add_term(lam.swap(i), c.clone());
                let mut d = c.shift(-1, 0);
                d -= &c.shift(1, 0);
                out.add_term(lam.clone(), d);
            }
        }
        Ok(out)
    }

    /// `H_i^{-1} = H_i + (v - v^{-1})`.
    pub fn apply_h_inv(&self, i: usize) -> Result<ModuleElement> {
        let mut out = self.apply_h(i)?;
        out.add_scaled(self, &CoeffPoly::v_minus_vinv());
        Ok(out)
    }

    /// `ω(M^λ) = M^{ω*(λ)}`.
    pub fn apply_omega(&self) -> ModuleElement {
        let mut out = Self::zero(self.rank);
        for (lam, c) in &self.terms {
            out.add_term(lam.omega_star(self.rank).expect("length within rank"), c.clone());
        }
        out
    }

    /// `ω^{-1}`; defined on elements whose terms all have `λ_n ≥ 1`.
    pub fn apply_omega_inv(&self) -> Result<ModuleElement> {
        let mut out = Self::zero(self.rank);
        for (lam, c) in &self.terms {
            out.add_term(lam.omega_star_inv(self.rank)?, c.clone());
        }
        Ok(out)
    }

    fn check_m(&self, m: usize) -> Result<()> {
        if m == 0 || m > self.rank {
            return Err(Error::IndexOutOfRange { index: m, rank: self.rank });
        }
        Ok(())
    }

    /// `Φ_m = H_m ⋯ H_{n-1} ω`.
    pub fn apply_phi(&self, m: usize) -> Result<ModuleElement> {
        self.check_m(m)?;
        let mut x = self.apply_omega();
        for i in (m..self.rank).rev() {
            x = x.apply_h(i)?;
        }
        Ok(x)
    }

    /// `Φ̄_m = H_m^{-1} ⋯ H_{n-1}^{-1} ω`.
    pub fn apply_phibar(&self, m: usize) -> Result<ModuleElement> {
        self.check_m(m)?;
        let mut x = self.apply_omega();
        for i in (m..self.rank).rev() {
            x = x.apply_h_inv(i)?;
        }
        Ok(x)
    }

    /// `Z_i = H_i^{-1} ⋯ H_{n-1}^{-1} ω H_1 ⋯ H_{i-1}`.
    pub fn apply_z(&self, i: usize) -> Result<ModuleElement> {
        self.check_m(i)?;
        let mut x = self.clone();
        for j in (1..i).rev() {
            x = x.apply_h(j)?;
        }
        x = x.apply_omega();
        for j in (i..self.rank).rev() {
            x = x.apply_h_inv(j)?;
        }
        Ok(x)
    }

    /// The bar involution `d`, semilinear in the coefficients.
    pub fn bar_d(&self) -> Result<ModuleElement> {
        let mut out = Self::zero(self.rank);
        for (lam, c) in &self.terms {
            out.add_scaled(&*bar_basis(self.rank, lam)?, &c.bar());
        }
        Ok(out)
    }

    /// `π_n`: drops terms with `λ_n > 0` and lowers the rank by one.
    pub fn project(&self) -> Result<ModuleElement> {
        if self.rank < 3 {
            return Err(Error::RankTooSmall { rank: self.rank, needed: 3 });
        }
        let mut out = Self::zero(self.rank - 1);
        for (lam, c) in &self.terms {
            if lam.length() < self.rank {
                out.add_term(lam.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// The same element viewed at a larger rank (the section of `π`).
    pub fn embed(&self, rank: usize) -> Result<ModuleElement> {
        if rank < self.rank {
            return Err(Error::RankTooSmall { rank, needed: self.rank });
        }
        Ok(ModuleElement { rank, terms: self.terms.clone() })
    }

    /// Sets `q = 0` in every coefficient.
    pub fn specialize_q0(&self) -> Result<ModuleElement> {
        let mut out = Self::zero(self.rank);
        for (lam, c) in &self.terms {
            out.add_term(lam.clone(), c.specialize_q0()?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            rank: self.rank,
            terms: self.terms.iter().map(|(l, c)| TermJson { lambda: l.clone(), coef: c.clone() }).collect(),
        }
    }

    pub fn from_json(json: &ModuleJson) -> Result<Self> {
        check_rank(json.rank)?;
        let mut out = Self::zero(json.rank);
        for t in &json.terms {
            if t.lambda.length() > json.rank {
                return Err(Error::RankTooSmall { rank: json.rank, needed: t.lambda.length() });
            }
            out.add_term(t.lambda.clone(), t.coef.clone());
        }
        Ok(out)
    }

    /// Human-readable form; uses `t` when every coefficient is even in `v`.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let use_t = self.terms.values().all(CoeffPoly::has_even_v);
        let mut parts = Vec::new();
        for (lam, c) in &self.terms {
            let coef = c.to_string_with(use_t);
            let coef = if c.len() == 1 { coef } else { format!("({coef})") };
            parts.push(if lam.is_empty() {
                coef
            } else if c.is_one() {
                format!("M({lam})")
            } else {
                format!("{coef}*M({lam})")
            });
        }
        parts.join(" + ")
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}] ", self.rank)?;
        for (k, (lam, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?})*M({lam})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub lambda: Composition,
    pub coef: CoeffPoly,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleJson {
    pub rank: usize,
    pub terms: Vec<TermJson>,
}

/// `d(M^λ)` at rank `n`, through `d(M^λ) = Φ̄_{l(λ)} d(M^{λ*})`.
pub fn bar_basis(n: usize, lambda: &Composition) -> Result<std::sync::Arc<ModuleElement>> {
    BAR.get_or_try_insert(&(n, lambda.clone()), || {
        if lambda.is_empty() {
            return ModuleElement::basis(n, Composition::empty());
        }
        let (star, m, _) = lambda.lambda_star()?;
        bar_basis(n, &star)?.apply_phibar(m)
    })
}

/// `Ψ(z^λ) = Z_1^{λ_1} ⋯ Z_n^{λ_n}(M^0)` at rank `n`.
pub fn psi_monomial(lambda: &Composition, n: usize) -> Result<std::sync::Arc<ModuleElement>> {
    check_rank(n)?;
    if lambda.length() > n {
        return Err(Error::RankTooSmall { rank: n, needed: lambda.length() });
    }
    PSI.get_or_try_insert(&(n, lambda.clone()), || {
        if lambda.is_empty() {
            return ModuleElement::basis(n, Composition::empty());
        }
        let i = lambda.length();
        let mut lower = lambda.padded(n);
        lower[i - 1] -= 1;
        psi_monomial(&Composition::new(lower), n)?.apply_z(i)
    })
}

/// Drops every memoized basis image.
pub fn clear_caches() {
    PSI.clear();
    BAR.clear();
}

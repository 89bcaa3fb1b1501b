//! Exact sparse Laurent polynomials in `v` and `q` over the integers.
//!
//! Every scalar in the library lives here. The Hecke parameter is `v` and
//! `t` is always stored as `v^2`; `q` may carry negative exponents so that
//! the bar involution and the duality identities can be expressed without
//! leaving the ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::composition::Composition;
use crate::error::{Error, Result};

/// Exponent pair of a monomial `v^v q^q`.
///
/// Ordered by `q` first, then `v`, which is the canonical output order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub q: i32,
    pub v: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, v: 0 };

    pub fn new(v: i32, q: i32) -> Self {
        Monomial { q, v }
    }

    fn times(self, other: Monomial) -> Monomial {
        Monomial { q: self.q + other.q, v: self.v + other.v }
    }
}

/// A finite `Z`-combination of monomials `v^a q^b`, `a, b ∈ Z`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct CoeffPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl CoeffPoly {
    pub fn zero() -> Self {
        CoeffPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::term(c.into(), 0, 0)
    }

    /// `c * v^v_exp * q^q_exp` for a machine integer `c`.
    pub fn monomial(c: i64, v_exp: i32, q_exp: i32) -> Self {
        Self::term(BigInt::from(c), v_exp, q_exp)
    }

    pub fn term(c: BigInt, v_exp: i32, q_exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(v_exp, q_exp), c);
        }
        CoeffPoly { terms }
    }

    pub fn v() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, 1)
    }

    pub fn t() -> Self {
        Self::monomial(1, 2, 0)
    }

    pub fn v_pow(k: i32) -> Self {
        Self::monomial(1, k, 0)
    }

    pub fn t_pow(k: i32) -> Self {
        Self::monomial(1, 2 * k, 0)
    }

    /// `v - v^{-1}`.
    pub fn v_minus_vinv() -> Self {
        let mut p = Self::monomial(1, 1, 0);
        p.add_term(Monomial::new(-1, 0), BigInt::from(-1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(q, v)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, v_exp: i32, q_exp: i32) -> BigInt {
        self.terms.get(&Monomial::new(v_exp, q_exp)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(0, 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `factor * other` in place.
    pub fn add_scaled(&mut self, other: &CoeffPoly, factor: &CoeffPoly) {
        for (m1, c1) in &factor.terms {
            for (m2, c2) in &other.terms {
                self.add_term(m1.times(*m2), c1 * c2);
            }
        }
    }

    /// Adds `v^dv q^dq * other` in place.
    pub fn add_shifted(&mut self, other: &CoeffPoly, dv: i32, dq: i32, sign: i64) {
        let shift = Monomial::new(dv, dq);
        for (m, c) in &other.terms {
            let c = if sign < 0 { -c } else { c.clone() };
            self.add_term(m.times(shift), c);
        }
    }

    /// Multiplication by the monomial `v^dv q^dq`.
    pub fn shift(&self, dv: i32, dq: i32) -> CoeffPoly {
        let shift = Monomial::new(dv, dq);
        CoeffPoly { terms: self.terms.iter().map(|(m, c)| (m.times(shift), c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> CoeffPoly {
        if c.is_zero() {
            return CoeffPoly::zero();
        }
        CoeffPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> CoeffPoly {
        let mut out = CoeffPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// The ring involution `v ↦ v^{-1}`, `q ↦ q^{-1}`.
    pub fn bar(&self) -> CoeffPoly {
        CoeffPoly {
            terms: self.terms.iter().map(|(m, c)| (Monomial { q: -m.q, v: -m.v }, c.clone())).collect(),
        }
    }

    pub fn is_q_free(&self) -> bool {
        self.terms.keys().all(|m| m.q == 0)
    }

    /// True when no negative power of `q` occurs.
    pub fn is_q_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.q >= 0)
    }

    /// True when no negative power of `v` occurs.
    pub fn is_v_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.v >= 0)
    }

    pub fn has_even_v(&self) -> bool {
        self.terms.keys().all(|m| m.v % 2 == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn min_v_exponent(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.v).min()
    }

    pub fn max_v_exponent(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.v).max()
    }

    /// Sets `q = 0`. Requires a `q`-polynomial.
    pub fn specialize_q0(&self) -> Result<CoeffPoly> {
        if !self.is_q_polynomial() {
            return Err(Error::InvalidInput("q = 0 specialization of a polynomial with negative q-powers".into()));
        }
        Ok(CoeffPoly { terms: self.terms.iter().filter(|(m, _)| m.q == 0).map(|(m, c)| (*m, c.clone())).collect() })
    }

    /// Keeps only the terms with `v`-exponent strictly below `bound`.
    pub fn truncate_v(&self, bound: i32) -> CoeffPoly {
        CoeffPoly { terms: self.terms.iter().filter(|(m, _)| m.v < bound).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Exact quotient `self / divisor` in `Z[v^±1, q^±1]`.
    ///
    /// Long division on lex-leading terms; every quotient monomial must lie
    /// in the exponent box forced by the extreme degrees of both operands,
    /// which bounds the loop.
    pub fn exact_div(&self, divisor: &CoeffPoly) -> Result<CoeffPoly> {
        if divisor.is_zero() {
            return Err(Error::InvalidInput("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(CoeffPoly::zero());
        }
        let (dv_lo, dv_hi, dq_lo, dq_hi) = divisor.exponent_box();
        let (pv_lo, pv_hi, pq_lo, pq_hi) = self.exponent_box();
        let (v_lo, v_hi) = (pv_lo - dv_lo, pv_hi - dv_hi);
        let (q_lo, q_hi) = (pq_lo - dq_lo, pq_hi - dq_hi);
        if v_lo > v_hi || q_lo > q_hi {
            return Err(Error::NonExactDivision);
        }

        let (&d_lead, d_coef) = divisor.terms.iter().next_back().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = CoeffPoly::zero();
        while let Some((&r_lead, r_coef)) = rem.terms.iter().next_back() {
            let m = Monomial { q: r_lead.q - d_lead.q, v: r_lead.v - d_lead.v };
            if m.v < v_lo || m.v > v_hi || m.q < q_lo || m.q > q_hi {
                return Err(Error::NonExactDivision);
            }
            if !(r_coef % d_coef).is_zero() {
                return Err(Error::NonExactDivision);
            }
            let c = r_coef / d_coef;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.times(m), -(dc * &c));
            }
            quot.add_term(m, c);
        }
        Ok(quot)
    }

    fn exponent_box(&self) -> (i32, i32, i32, i32) {
        let mut v_lo = i32::MAX;
        let mut v_hi = i32::MIN;
        let mut q_lo = i32::MAX;
        let mut q_hi = i32::MIN;
        for m in self.terms.keys() {
            v_lo = v_lo.min(m.v);
            v_hi = v_hi.max(m.v);
            q_lo = q_lo.min(m.q);
            q_hi = q_hi.max(m.q);
        }
        (v_lo, v_hi, q_lo, q_hi)
    }

    /// `φ_m(t) = ∏_{i=1}^m (1 - t^i)`.
    pub fn phi(m: u32) -> CoeffPoly {
        let mut out = CoeffPoly::one();
        for i in 1..=m {
            out = &out * &(CoeffPoly::one() - CoeffPoly::t_pow(i as i32));
        }
        out
    }

    /// `b_π(t) = ∏_{a ≥ 1} φ_{m_a(π)}(t)` for a partition `π`.
    pub fn b_partition(partition: &Composition) -> Result<CoeffPoly> {
        if !partition.is_partition() {
            return Err(Error::InvalidInput(format!("b_partition needs a partition, got ({partition})")));
        }
        let mut out = CoeffPoly::one();
        for (part, mult) in partition.multiplicities() {
            if part > 0 {
                out = &out * &CoeffPoly::phi(mult as u32);
            }
        }
        Ok(out)
    }

    /// Renders with `t` in place of `v^2` when `use_t` holds and every
    /// exponent of `v` is even.
    pub fn to_string_with(&self, use_t: bool) -> String {
        struct Show<'a>(&'a CoeffPoly, bool);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.display_with(f, self.1)
            }
        }
        Show(self, use_t && self.has_even_v()).to_string()
    }

    fn display_with(&self, f: &mut fmt::Formatter<'_>, use_t: bool) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let abs = c.abs();
            let mut vars = Vec::new();
            if m.v != 0 {
                let (name, e) = if use_t { ("t", m.v / 2) } else { ("v", m.v) };
                vars.push(if e == 1 { name.to_string() } else { format!("{name}^{e}") });
            }
            if m.q != 0 {
                vars.push(if m.q == 1 { "q".to_string() } else { format!("q^{}", m.q) });
            }
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for CoeffPoly {
    /// Writes `t` for `v^2` whenever every `v`-exponent is even.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(f, self.has_even_v())
    }
}

impl fmt::Debug for CoeffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_with(f, false)
    }
}

impl From<i64> for CoeffPoly {
    fn from(c: i64) -> Self {
        CoeffPoly::monomial(c, 0, 0)
    }
}

impl Add<&CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn add(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CoeffPoly {
    type Output = CoeffPoly;
    fn add(mut self, rhs: CoeffPoly) -> CoeffPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&CoeffPoly> for CoeffPoly {
    fn add_assign(&mut self, rhs: &CoeffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&CoeffPoly> for CoeffPoly {
    fn sub_assign(&mut self, rhs: &CoeffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Sub<&CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn sub(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for CoeffPoly {
    type Output = CoeffPoly;
    fn sub(mut self, rhs: CoeffPoly) -> CoeffPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        CoeffPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for CoeffPoly {
    type Output = CoeffPoly;
    fn neg(self) -> CoeffPoly {
        -&self
    }
}

impl Mul<&CoeffPoly> for &CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: &CoeffPoly) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        out.add_scaled(self, rhs);
        out
    }
}

impl Mul for CoeffPoly {
    type Output = CoeffPoly;
    fn mul(self, rhs: CoeffPoly) -> CoeffPoly {
        &self * &rhs
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    v: i32,
    q: i32,
    c: String,
}

impl Serialize for CoeffPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> =
            self.terms.iter().map(|(m, c)| JsonTerm { v: m.v, q: m.q, c: c.to_string() }).collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoeffPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<JsonTerm>::deserialize(deserializer)?;
        let mut out = CoeffPoly::zero();
        for t in raw {
            let c: BigInt = t.c.parse().map_err(serde::de::Error::custom)?;
            out.add_term(Monomial::new(t.v, t.q), c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(terms: &[(i64, i32, i32)]) -> CoeffPoly {
        let mut out = CoeffPoly::zero();
        for &(c, v, q) in terms {
            out.add_term(Monomial::new(v, q), BigInt::from(c));
        }
        out
    }

    #[test]
    fn ring_examples() {
        let a = p(&[(1, 0, 0), (-1, 2, 1)]);
        assert_eq!(&a + &p(&[(1, 2, 1)]), CoeffPoly::one());
        let b = p(&[(1, 0, 0), (-1, 2, 0)]) * p(&[(1, 0, 0), (1, 2, 0)]);
        assert_eq!(b, p(&[(1, 0, 0), (-1, 4, 0)]));
        assert!((CoeffPoly::v() * CoeffPoly::v_pow(-1)).is_one());
    }

    #[test]
    fn bar_examples() {
        let skew = CoeffPoly::v_minus_vinv();
        assert_eq!(skew.bar(), -&skew);
        assert_eq!(p(&[(1, 2, 1)]).bar(), p(&[(1, -2, -1)]));
    }

    #[test]
    fn exact_division_examples() {
        let num = p(&[(1, 0, 0), (-1, 4, 0)]);
        let den = p(&[(1, 0, 0), (-1, 2, 0)]);
        assert_eq!(num.exact_div(&den).unwrap(), p(&[(1, 0, 0), (1, 2, 0)]));
        let bad = p(&[(1, 0, 0), (-1, 2, 1)]);
        assert!(matches!(bad.exact_div(&den), Err(Error::NonExactDivision)));
        assert_eq!(bad.exact_div(&CoeffPoly::one()).unwrap(), bad);
        assert!(matches!(CoeffPoly::one().exact_div(&den), Err(Error::NonExactDivision)));
    }

    #[test]
    fn phi_and_b() {
        let one_minus = |k| CoeffPoly::one() - CoeffPoly::t_pow(k);
        assert_eq!(CoeffPoly::phi(2), one_minus(1) * one_minus(2));
        let b = CoeffPoly::b_partition(&Composition::new(vec![2, 1, 1])).unwrap();
        assert_eq!(b, one_minus(1) * one_minus(1) * one_minus(2));
        assert!(CoeffPoly::b_partition(&Composition::empty()).unwrap().is_one());
        assert!(CoeffPoly::b_partition(&Composition::new(vec![1, 2])).is_err());
    }

    #[test]
    fn q0_specialization() {
        let a = p(&[(1, 0, 0), (-1, 2, 1), (3, 1, 0)]);
        assert_eq!(a.specialize_q0().unwrap(), p(&[(1, 0, 0), (3, 1, 0)]));
        assert!(p(&[(1, 0, -1)]).specialize_q0().is_err());
    }

    #[test]
    fn display_uses_t_when_even() {
        assert_eq!(p(&[(1, 2, 0), (1, 2, 1), (1, 4, 1)]).to_string(), "t + t*q + t^2*q");
        assert_eq!(p(&[(1, 1, 0), (-2, -1, 0)]).to_string(), "-2*v^-1 + v");
        assert_eq!(CoeffPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip_and_order() {
        let a = p(&[(5, 3, 1), (-2, -1, 0), (7, 0, 2)]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[{"v":-1,"q":0,"c":"-2"},{"v":3,"q":1,"c":"5"},{"v":0,"q":2,"c":"7"}]"#);
        let back: CoeffPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    fn arb_poly() -> impl Strategy<Value = CoeffPoly> {
        prop::collection::vec((-5i64..=5, -3i32..=3, -2i32..=2), 0..5).prop_map(|ts| p(&ts))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn bar_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn division_undoes_multiplication(a in arb_poly(), d in arb_poly()) {
            prop_assume!(!d.is_zero());
            prop_assert_eq!((&a * &d).exact_div(&d).unwrap(), a);
        }
    }
}

//! Compositions, their diagrams and box statistics.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finitely supported sequence of naturals, stored without trailing zeros.
///
/// Equality and ordering are those of the infinite zero-padded sequence;
/// the derived lexicographic order on the trimmed vector agrees with it.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<u32>,
}

/// The box in row `row` and column `col` (both 1-based) of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub row: usize,
    pub col: u32,
}

impl Cell {
    pub fn new(row: usize, col: u32) -> Self {
        Cell { row, col }
    }
}

/// The sorting permutation `w^λ` at an explicit rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortPermutation {
    /// `images[i - 1] = w^λ(i)`, 1-based values.
    pub images: Vec<usize>,
    /// `ℓ(w^λ)`.
    pub inversions: usize,
    /// The decreasing rearrangement `λ⁺`.
    pub sorted: Composition,
}

impl Composition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Composition { parts }
    }

    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    /// Alias of [`Composition::new`].
    pub fn canonicalize(raw: &[u32]) -> Self {
        Composition::new(raw.to_vec())
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `λ_i` for a 1-based index; zero past the stored parts.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `l(λ)`: the index of the last nonzero part.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `λ` zero-padded to `n` entries.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        assert!(n >= self.length(), "rank {n} below length of ({self})");
        let mut out = self.parts.clone();
        out.resize(n, 0);
        out
    }

    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1])
    }

    /// `pl(λ)`: the least `m` such that `λ_{>m}` is weakly decreasing.
    pub fn partition_length(&self) -> usize {
        let p = &self.parts;
        let mut m = p.len().saturating_sub(1);
        while m > 0 && p[m - 1] >= p[m] {
            m -= 1;
        }
        m
    }

    /// The tail `λ_{>m}`.
    pub fn tail(&self, m: usize) -> Composition {
        Composition::new(self.parts.iter().skip(m).copied().collect())
    }

    /// The head `(λ_1, …, λ_m)` followed by `tail`.
    pub fn with_tail(&self, m: usize, tail: &[u32]) -> Composition {
        let mut parts = self.padded(self.length().max(m));
        parts.truncate(m);
        parts.extend_from_slice(tail);
        Composition::new(parts)
    }

    /// `(part, multiplicity)` pairs of the nonzero parts, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut sorted: Vec<u32> = self.parts.iter().copied().filter(|&p| p > 0).collect();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<(u32, usize)> = Vec::new();
        for p in sorted {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// The decreasing rearrangement `λ⁺`.
    pub fn sorted_desc(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Composition::new(parts)
    }

    /// The increasing rearrangement of `λ` padded to rank `n`.
    pub fn sorted_asc(&self, n: usize) -> Composition {
        let mut parts = self.padded(n);
        parts.sort_unstable();
        Composition::new(parts)
    }

    /// `ℓ(w^λ) = #{i < j : λ_i < λ_j}`; independent of the padding rank.
    pub fn inversions(&self) -> usize {
        let p = &self.parts;
        let mut count = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] < p[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `w^λ(i) = #{j ≤ i : λ_j ≥ λ_i} + #{j > i : λ_j > λ_i}` for `i = 1..n`.
    pub fn sorting_data(&self, n: usize) -> Result<SortPermutation> {
        if n < self.length() {
            return Err(Error::RankTooSmall { rank: n, needed: self.length() });
        }
        let p = self.padded(n);
        let images = (0..n)
            .map(|i| {
                let before = p[..=i].iter().filter(|&&x| x >= p[i]).count();
                let after = p[i + 1..].iter().filter(|&&x| x > p[i]).count();
                before + after
            })
            .collect();
        Ok(SortPermutation { images, inversions: self.inversions(), sorted: self.sorted_desc() })
    }

    /// `s_i λ` for a 1-based `i`: swaps `λ_i` and `λ_{i+1}`.
    pub fn swap(&self, i: usize) -> Composition {
        let mut parts = self.padded(self.length().max(i + 1));
        parts.swap(i - 1, i);
        Composition::new(parts)
    }

    pub fn contains(&self, s: Cell) -> bool {
        s.row >= 1 && s.col >= 1 && s.col <= self.part(s.row)
    }

    fn check_cell(&self, s: Cell) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("box ({}, {}) is not in the diagram of ({self})", s.row, s.col)))
        }
    }

    /// `a_λ(s) = λ_i - j`.
    pub fn arm(&self, s: Cell) -> Result<u32> {
        self.check_cell(s)?;
        Ok(self.part(s.row) - s.col)
    }

    /// `l_λ(s) = #{k < i : j ≤ λ_k + 1 ≤ λ_i} + #{k > i : j ≤ λ_k ≤ λ_i}`.
    pub fn leg(&self, s: Cell) -> Result<u32> {
        self.check_cell(s)?;
        let (i, j) = (s.row, s.col);
        let li = self.part(i);
        let mut count = 0;
        for k in 1..=self.length() {
            let lk = self.part(k);
            if (k < i && j <= lk + 1 && lk < li) || (k > i && j <= lk && lk <= li) {
                count += 1;
            }
        }
        Ok(count)
    }

    /// `c_λ(s) = #{k < i : j ≤ λ_k + 1} + #{k ≥ i : j ≤ λ_k}`.
    pub fn column(&self, s: Cell) -> Result<usize> {
        self.check_cell(s)?;
        let (i, j) = (s.row, s.col);
        let before = (1..i).filter(|&k| j <= self.part(k) + 1).count();
        let after = (i..=self.length()).filter(|&k| j <= self.part(k)).count();
        Ok(before + after)
    }

    /// All boxes, row by row.
    pub fn diagram(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 1..=p {
                out.push(Cell::new(i + 1, j));
            }
        }
        out
    }

    /// Boxes column by column from the rightmost column, top to bottom within
    /// a column, paired with their column lengths `c_λ(s)`.
    pub fn box_enumeration(&self) -> Vec<(Cell, usize)> {
        let width = self.parts.iter().copied().max().unwrap_or(0);
        let mut out = Vec::with_capacity(self.weight() as usize);
        for j in (1..=width).rev() {
            for i in 1..=self.length() {
                let s = Cell::new(i, j);
                if self.contains(s) {
                    let c = self.column(s).expect("box in diagram");
                    out.push((s, c));
                }
            }
        }
        out
    }

    /// The column sequence `(c_1, …, c_d)` of the box enumeration.
    pub fn c_word(&self) -> Vec<usize> {
        self.box_enumeration().into_iter().map(|(_, c)| c).collect()
    }

    /// `(λ*, m, a)` with `m = l(λ)`, `λ* = (λ_m - 1, λ_1, …, λ_{m-1})` and
    /// `a = 1 + #{i ≤ m : λ_i < λ_m}`.
    pub fn lambda_star(&self) -> Result<(Composition, usize, u32)> {
        let m = self.length();
        if m == 0 {
            return Err(Error::InvalidInput("λ* of the empty composition".into()));
        }
        let lm = self.parts[m - 1];
        let mut parts = Vec::with_capacity(m);
        parts.push(lm - 1);
        parts.extend_from_slice(&self.parts[..m - 1]);
        let a = 1 + self.parts.iter().filter(|&&x| x < lm).count() as u32;
        Ok((Composition::new(parts), m, a))
    }

    /// `ω*(λ) = (λ_2, …, λ_n, λ_1 + 1)`.
    pub fn omega_star(&self, n: usize) -> Result<Composition> {
        if n < self.length() || n == 0 {
            return Err(Error::RankTooSmall { rank: n, needed: self.length().max(1) });
        }
        let p = self.padded(n);
        let mut parts: Vec<u32> = p[1..].to_vec();
        parts.push(p[0] + 1);
        Ok(Composition::new(parts))
    }

    /// `(λ_n - 1, λ_1, …, λ_{n-1})`; requires `λ_n ≥ 1`.
    pub fn omega_star_inv(&self, n: usize) -> Result<Composition> {
        if n < self.length() || n == 0 {
            return Err(Error::RankTooSmall { rank: n, needed: self.length().max(1) });
        }
        let p = self.padded(n);
        if p[n - 1] == 0 {
            return Err(Error::InvalidInput(format!("inverse rotation needs λ_{n} ≥ 1 for ({self})")));
        }
        let mut parts = vec![p[n - 1] - 1];
        parts.extend_from_slice(&p[..n - 1]);
        Ok(Composition::new(parts))
    }

    /// All compositions of weight `d` with at most `max_len` parts, in
    /// lexicographic order.
    pub fn all_of_weight(d: u32, max_len: usize) -> Vec<Composition> {
        fn rec(rest: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if slots == 0 {
                if rest == 0 {
                    out.push(Composition::new(cur.clone()));
                }
                return;
            }
            for x in 0..=rest {
                cur.push(x);
                rec(rest - x, slots - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, max_len, &mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// All partitions of `d`, in lexicographic order.
    pub fn partitions_of(d: u32) -> Vec<Composition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition::new(cur.clone()));
                return;
            }
            for x in (1..=rest.min(max)).rev() {
                cur.push(x);
                rec(rest - x, x, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All distinct rearrangements of `λ` padded to rank `n`.
    pub fn rearrangements(&self, n: usize) -> Vec<Composition> {
        let mut p = self.padded(n);
        p.sort_unstable();
        let mut out = vec![Composition::new(p.clone())];
        while next_permutation(&mut p) {
            out.push(Composition::new(p.clone()));
        }
        out
    }
}

fn next_permutation(p: &mut [u32]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

impl From<Vec<u32>> for Composition {
    fn from(parts: Vec<u32>) -> Self {
        Composition::new(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Composition::empty());
        }
        let parts = s
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|e| Error::Parse(format!("bad part {x:?}: {e}"))))
            .collect::<Result<Vec<u32>>>()?;
        Ok(Composition::new(parts))
    }
}

impl Serialize for Composition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Composition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A composition together with a set of marked boxes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedDiagram {
    shape: Composition,
    marked: BTreeSet<Cell>,
}

impl MarkedDiagram {
    pub fn new(shape: Composition, marked: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let marked: BTreeSet<Cell> = marked.into_iter().collect();
        if let Some(s) = marked.iter().find(|s| !shape.contains(**s)) {
            return Err(Error::InvalidInput(format!("marked box ({}, {}) lies outside ({shape})", s.row, s.col)));
        }
        Ok(MarkedDiagram { shape, marked })
    }

    pub fn unmarked(shape: Composition) -> Self {
        MarkedDiagram { shape, marked: BTreeSet::new() }
    }

    /// Marking from a bitmask over the box enumeration, least significant
    /// bit first.
    pub fn from_mask(shape: Composition, mask: u64) -> Result<Self> {
        let boxes = shape.box_enumeration();
        if boxes.len() < 64 && mask >> boxes.len() != 0 {
            return Err(Error::InvalidInput(format!("mask {mask:#b} exceeds the {} boxes of ({shape})", boxes.len())));
        }
        let marked = boxes.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, (s, _))| *s);
        MarkedDiagram::new(shape.clone(), marked)
    }

    pub fn mask(&self) -> u64 {
        self.shape
            .box_enumeration()
            .iter()
            .enumerate()
            .filter(|(_, (s, _))| self.marked.contains(s))
            .fold(0, |acc, (k, _)| acc | 1 << k)
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn marked(&self) -> &BTreeSet<Cell> {
        &self.marked
    }

    /// `(A, L) = (Σ_{s∈S} (a(s) + 1), Σ_{s∈S} (l(s) + 1))`.
    pub fn marking_stats(&self) -> (u32, u32) {
        let mut a = 0;
        let mut l = 0;
        for s in &self.marked {
            a += self.shape.arm(*s).expect("marked box in diagram") + 1;
            l += self.shape.leg(*s).expect("marked box in diagram") + 1;
        }
        (a, l)
    }

    /// The operator word in application order: `(column, marked)` per box.
    pub fn word(&self) -> Vec<(usize, bool)> {
        self.shape.box_enumeration().into_iter().map(|(s, c)| (c, self.marked.contains(&s))).collect()
    }
}

impl fmt::Display for MarkedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|", self.shape)?;
        for (k, s) in self.marked.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}.{}", s.row, s.col)?;
        }
        Ok(())
    }
}

impl FromStr for MarkedDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (shape, marks) = s.split_once('|').unwrap_or((s, ""));
        let shape: Composition = shape.parse()?;
        let mut cells = Vec::new();
        for item in marks.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (r, c) = item.split_once('.').ok_or_else(|| Error::Parse(format!("bad box {item:?}")))?;
            let r = r.trim().parse().map_err(|e| Error::Parse(format!("bad row in {item:?}: {e}")))?;
            let c = c.trim().parse().map_err(|e| Error::Parse(format!("bad column in {item:?}: {e}")))?;
            cells.push(Cell::new(r, c));
        }
        MarkedDiagram::new(shape, cells)
    }
}

impl Serialize for MarkedDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MarkedDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

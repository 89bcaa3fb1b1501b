//! Semistandard tableaux: Schur polynomials and the charge statistic.

use crate::coeff::CoeffPoly;
use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::polyrep::ZPoly;

/// A filling of a partition shape, rows top to bottom.
pub type Tableau = Vec<Vec<u32>>;

/// All semistandard tableaux of shape `shape` with entries in `1..=max_entry`,
/// optionally with prescribed content.
pub fn semistandard_tableaux(shape: &Composition, max_entry: u32, content: Option<&[u32]>) -> Result<Vec<Tableau>> {
    if !shape.is_partition() {
        return Err(Error::InvalidInput(format!("({shape}) is not a partition")));
    }
    let rows: Vec<usize> = shape.parts().iter().map(|&p| p as usize).collect();
    let mut remaining: Vec<u32> = match content {
        Some(c) => {
            let mut c = c.to_vec();
            c.resize(max_entry as usize, 0);
            c
        }
        None => vec![u32::MAX; max_entry as usize],
    };
    let mut tab: Tableau = rows.iter().map(|&r| vec![0; r]).collect();
    let mut out = Vec::new();
    fill(&rows, 0, 0, max_entry, &mut remaining, &mut tab, &mut out);
    Ok(out)
}

fn fill(
    rows: &[usize],
    r: usize,
    c: usize,
    max_entry: u32,
    remaining: &mut [u32],
    tab: &mut Tableau,
    out: &mut Vec<Tableau>,
) {
    if r == rows.len() {
        if remaining.iter().all(|&x| x == 0 || x == u32::MAX) {
            out.push(tab.clone());
        }
        return;
    }
    if c == rows[r] {
        fill(rows, r + 1, 0, max_entry, remaining, tab, out);
        return;
    }
    let left = if c > 0 { tab[r][c - 1] } else { 1 };
    let above = if r > 0 { tab[r - 1][c] + 1 } else { 1 };
    for x in left.max(above)..=max_entry {
        let slot = &mut remaining[x as usize - 1];
        if *slot == 0 {
            continue;
        }
        if *slot != u32::MAX {
            *slot -= 1;
        }
        tab[r][c] = x;
        fill(rows, r, c + 1, max_entry, remaining, tab, out);
        let slot = &mut remaining[x as usize - 1];
        *slot = slot.saturating_add(1);
    }
    tab[r][c] = 0;
}

/// The Schur polynomial `s_λ(z_1, …, z_n)`.
pub fn schur(lambda: &Composition, n: usize) -> Result<ZPoly> {
    let mut out = ZPoly::zero(n);
    if lambda.length() > n {
        return Ok(out);
    }
    for t in semistandard_tableaux(lambda, n as u32, None)? {
        let mut e = vec![0u32; n];
        for x in t.iter().flatten() {
            e[*x as usize - 1] += 1;
        }
        out.add_term(Composition::new(e), CoeffPoly::one());
    }
    Ok(out)
}

/// Row reading word: rows from bottom to top, each left to right.
pub fn reading_word(t: &Tableau) -> Vec<u32> {
    t.iter().rev().flatten().copied().collect()
}

/// Charge of a word whose content is a partition.
///
/// Standard subwords are extracted by scanning leftwards (cyclically) for
/// `1, 2, 3, …`; the index rises by one each time the scan wraps past the
/// left end, and the charge is the sum of indices over all subwords.
pub fn charge(word: &[u32]) -> u64 {
    let mut letters: Vec<Option<u32>> = word.iter().map(|&x| Some(x)).collect();
    let mut total = 0u64;
    loop {
        let live: Vec<usize> = (0..letters.len()).filter(|&i| letters[i].is_some()).collect();
        if live.is_empty() {
            return total;
        }
        let top = live.iter().map(|&i| letters[i].unwrap()).max().unwrap();
        let mut size = 0;
        while size < top && live.iter().any(|&i| letters[i] == Some(size + 1)) {
            size += 1;
        }
        // Start from the right end looking for 1.
        let mut pos = letters.len();
        let mut index = 0u64;
        for k in 1..=size {
            let found_left = (0..pos).rev().find(|&i| letters[i] == Some(k));
            let p = match found_left {
                Some(p) => p,
                None => {
                    if k > 1 {
                        index += 1;
                    }
                    (pos..letters.len()).rev().find(|&i| letters[i] == Some(k)).expect("letter present")
                }
            };
            total += index;
            letters[p] = None;
            pos = p;
        }
    }
}

/// The Kostka–Foulkes polynomial `Σ_T t^{charge(T)}` over tableaux of shape
/// `λ` and content `μ`.
pub fn kostka_foulkes(lambda: &Composition, mu: &Composition) -> Result<CoeffPoly> {
    if !mu.is_partition() {
        return Err(Error::InvalidInput(format!("content ({mu}) is not a partition")));
    }
    if lambda.weight() != mu.weight() {
        return Ok(CoeffPoly::zero());
    }
    let mut out = CoeffPoly::zero();
    for t in semistandard_tableaux(lambda, mu.length() as u32, Some(mu.parts()))? {
        out += &CoeffPoly::t_pow(charge(&reading_word(&t)) as i32);
    }
    Ok(out)
}

//! Exhaustive positivity scans over all pairs `(λ, μ)` of bounded weight.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::{Cache, CacheKey, CacheKind};
use crate::coeff::CoeffPoly;
use crate::composition::{Composition, MarkedDiagram};
use crate::error::{Error, Result};
use crate::kl::kl_element;
use crate::kostka::{msym_expand, pair, KostkaResult, MSymExpansion, MarkedTerm};
use crate::macdonald::{e_tilde_element, marked_e_all};
use crate::memo::Memo;

pub const REPORT_FORMAT: &str = "kostka-scan/1";

#[derive(Clone, Debug, Default)]
pub struct ScanOptions {
    pub max_weight: u32,
    /// Longest composition considered; defaults to `d + 1` at weight `d`.
    pub max_len: Option<usize>,
    /// Also compute every marked refinement.
    pub marked: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub cache: Option<Cache>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `K_{λμ} ∉ N[v, q]`.
    Positivity,
    /// Negative powers of `v` in `Ψ(Ẽ_μ)`.
    VPolynomial,
    /// `K_{λμ̄} ∉ N[v]`.
    MarkedPositivity,
    /// `K_{λμ}(0, t)` differs from the KL coefficient.
    KlAtQZero,
    /// `K_{λ, s_i μ} ≠ v K_{λμ}`.
    Mpart,
    /// The marked values do not sum to `K_{λμ}`.
    MarkedSum,
    /// A computation failed its own consistency checks.
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub lambda: Option<Composition>,
    pub mu: Composition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marking: Option<MarkedDiagram>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<CoeffPoly>,
    pub rank: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub lambda: Composition,
    pub mu: Composition,
    pub value: CoeffPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub marked: Option<Vec<MarkedTerm>>,
}

/// Number of individual verdicts of each kind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCounts {
    pub positivity: usize,
    pub v_polynomial: usize,
    pub marked_positivity: usize,
    pub kl_at_q_zero: usize,
    pub mpart: usize,
    pub marked_sum: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub format: String,
    pub max_weight: u32,
    /// Composition length bound used at each weight.
    pub max_len: Vec<usize>,
    /// Working rank used at each weight.
    pub ranks: Vec<usize>,
    pub pairs: usize,
    pub checks: CheckCounts,
    /// Smallest exponent of `v` seen in any nonzero `K_{λμ}`.
    pub min_v_exponent: Option<i32>,
    pub violations: Vec<Violation>,
    pub timings: BTreeMap<String, f64>,
    #[serde(skip)]
    pub table: Vec<PairRecord>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// CSV rows `lambda,mu,K` with `K` in the JSON term format.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["lambda", "mu", "K"]).map_err(csv_err)?;
        for r in &self.table {
            let k = serde_json::to_string(&r.value)?;
            w.write_record([r.lambda.to_string(), r.mu.to_string(), k]).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// Runs the scan. The process-wide memo tables are cleared after each
/// weight, since nothing at one working rank is reused at the next.
pub fn scan(opts: &ScanOptions) -> Result<ScanReport> {
    match opts.jobs {
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
            pool.install(|| run(opts))
        }
        None => run(opts),
    }
}

type ExpansionMemo = Memo<(u8, Composition, usize), MSymExpansion>;

struct Weight<'a> {
    opts: &'a ScanOptions,
    n: usize,
    comps: Vec<Composition>,
    expansions: ExpansionMemo,
}

fn run(opts: &ScanOptions) -> Result<ScanReport> {
    let start = Instant::now();
    let mut report = ScanReport {
        format: REPORT_FORMAT.to_string(),
        max_weight: opts.max_weight,
        max_len: Vec::new(),
        ranks: Vec::new(),
        pairs: 0,
        checks: CheckCounts::default(),
        min_v_exponent: None,
        violations: Vec::new(),
        timings: BTreeMap::new(),
        table: Vec::new(),
    };
    for d in 0..=opts.max_weight {
        let t0 = Instant::now();
        let len = opts.max_len.unwrap_or(d as usize + 1);
        let n = (len + d as usize + 1).max(2);
        report.max_len.push(len);
        report.ranks.push(n);
        let w = Weight {
            opts,
            n,
            comps: Composition::all_of_weight(d, len),
            expansions: Memo::new(),
        };
        w.prepare(&mut report)?;
        let t1 = Instant::now();
        w.pairs(&mut report)?;
        let t2 = Instant::now();
        // Nothing computed at this rank is needed again.
        drop(w);
        crate::kl::clear_caches();
        crate::macdonald::clear_caches();
        crate::parabolic::clear_caches();
        crate::kostka::clear_caches();
        report.timings.insert(format!("weight_{d}_prepare_s"), (t1 - t0).as_secs_f64());
        report.timings.insert(format!("weight_{d}_pairs_s"), (t2 - t1).as_secs_f64());
    }
    report.timings.insert("total_s".into(), start.elapsed().as_secs_f64());
    report.violations.sort_by(|a, b| {
        (a.kind, &a.lambda, &a.mu, &a.marking).cmp(&(b.kind, &b.lambda, &b.mu, &b.marking))
    });
    Ok(report)
}

impl Weight<'_> {
    fn violation(&self, kind: ViolationKind, lambda: Option<&Composition>, mu: &Composition, detail: String) -> Violation {
        Violation { kind, lambda: lambda.cloned(), mu: mu.clone(), marking: None, value: None, rank: self.n, detail }
    }

    /// Builds every `M̲^λ` and `Ẽ_μ` and checks that each `Ẽ_μ` has
    /// coefficients in `Z[v, q]`.
    fn prepare(&self, report: &mut ScanReport) -> Result<()> {
        let n = self.n;
        let results: Vec<Result<Option<Violation>>> = self
            .comps
            .par_iter()
            .map(|c| {
                kl_element(c, n)?;
                let e = e_tilde_element(c, n)?;
                if let Some((tau, coef)) = e.terms().find(|(_, x)| !x.is_v_polynomial()) {
                    let mut v = self.violation(
                        ViolationKind::VPolynomial,
                        None,
                        c,
                        format!("coefficient of M^({tau}) has negative powers of v"),
                    );
                    v.value = Some(coef.clone());
                    return Ok(Some(v));
                }
                Ok(None)
            })
            .collect();
        for r in results {
            report.checks.v_polynomial += 1;
            if let Some(v) = r? {
                report.violations.push(v);
            }
        }
        Ok(())
    }

    fn expansion(&self, tag: u8, c: &Composition, m: usize) -> Result<Arc<MSymExpansion>> {
        self.expansions.get_or_try_insert(&(tag, c.clone(), m), || match tag {
            0 => msym_expand(&kl_element(c, self.n)?.element, m),
            _ => msym_expand(&*e_tilde_element(c, self.n)?, m),
        })
    }

    fn compute_pair(&self, lambda: &Composition, mu: &Composition) -> Result<PairRecord> {
        let m = lambda.partition_length().max(mu.length());
        let cache = self.opts.cache.as_ref();
        let key = CacheKey::new(CacheKind::Kostka, self.n, &[lambda, mu]);
        let value = match cache.map(|c| c.get::<KostkaResult>(&key)).transpose()?.flatten() {
            Some(r) => r.value,
            None => {
                let v = pair(&*self.expansion(0, lambda, m)?, &*self.expansion(1, mu, m)?)?;
                if let Some(c) = cache {
                    c.put(&key, &KostkaResult::new(lambda, mu, v.clone(), m, self.n))?;
                }
                v
            }
        };
        Ok(PairRecord { lambda: lambda.clone(), mu: mu.clone(), value, marked: None })
    }

    /// Every marked table with second index `μ`, in the order of `comps`.
    /// The `2^{|μ|}` marked polynomials are built once and dropped on return.
    fn marked_column(&self, mu: &Composition) -> Result<Vec<Vec<MarkedTerm>>> {
        let cache = self.opts.cache.as_ref();
        let keys: Vec<CacheKey> =
            self.comps.iter().map(|l| CacheKey::new(CacheKind::Marked, self.n, &[l, mu])).collect();
        let mut hits: Vec<Option<Vec<MarkedTerm>>> = Vec::with_capacity(keys.len());
        for key in &keys {
            hits.push(cache.map(|c| c.get(key)).transpose()?.flatten());
        }
        if hits.iter().all(Option::is_some) {
            return Ok(hits.into_iter().flatten().collect());
        }
        let all = marked_e_all(mu, self.n)?;
        let mut expanded: HashMap<(usize, usize), MSymExpansion> = HashMap::new();
        let mut out = Vec::with_capacity(self.comps.len());
        for ((lambda, key), hit) in self.comps.iter().zip(&keys).zip(hits) {
            if let Some(table) = hit {
                out.push(table);
                continue;
            }
            let m = lambda.partition_length().max(mu.length());
            let kl = self.expansion(0, lambda, m)?;
            let mut table = Vec::with_capacity(all.len());
            for (mask, e) in all.iter().enumerate() {
                let diagram = MarkedDiagram::from_mask(mu.clone(), mask as u64)?;
                let (a, l) = diagram.marking_stats();
                let x = match expanded.entry((m, mask)) {
                    std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
                    std::collections::hash_map::Entry::Vacant(v) => v.insert(msym_expand(e, m)?),
                };
                let raw = pair(&kl, x)?;
                table.push(MarkedTerm { diagram, a, l, value: raw.shift(2 * l as i32, 0) });
            }
            if let Some(c) = cache {
                c.put(key, &table)?;
            }
            out.push(table);
        }
        Ok(out)
    }

    fn pairs(&self, report: &mut ScanReport) -> Result<()> {
        let pairs: Vec<(&Composition, &Composition)> =
            self.comps.iter().flat_map(|l| self.comps.iter().map(move |m| (l, m))).collect();
        let computed: Vec<(usize, std::result::Result<PairRecord, Error>)> =
            pairs.par_iter().enumerate().map(|(k, (l, m))| (k, self.compute_pair(l, m))).collect();

        let mut columns: HashMap<&Composition, Vec<Vec<MarkedTerm>>> = HashMap::new();
        if self.opts.marked {
            let built: Vec<(&Composition, Result<Vec<Vec<MarkedTerm>>>)> =
                self.comps.par_iter().map(|mu| (mu, self.marked_column(mu))).collect();
            for (mu, r) in built {
                match r {
                    Ok(col) => {
                        columns.insert(mu, col);
                    }
                    Err(e) if e.is_internal() => {
                        report.violations.push(self.violation(ViolationKind::Internal, None, mu, e.to_string()));
                    }
                    Err(e) => return Err(e),
                }
            }
        }

        let mut values: HashMap<(&Composition, &Composition), CoeffPoly> = HashMap::new();
        let mut records = Vec::with_capacity(computed.len());
        for (k, r) in computed {
            let (lambda, mu) = pairs[k];
            match r {
                Ok(mut rec) => {
                    let row = k / self.comps.len();
                    rec.marked = columns.get(mu).map(|col| col[row].clone());
                    values.insert((lambda, mu), rec.value.clone());
                    records.push(rec);
                }
                Err(e) if e.is_internal() => {
                    report.violations.push(self.violation(ViolationKind::Internal, Some(lambda), mu, e.to_string()));
                }
                Err(e) => return Err(e),
            }
        }

        for rec in &records {
            self.check_record(rec, report)?;
        }
        for lambda in &self.comps {
            let kl = kl_element(lambda, self.n)?;
            for mu in &self.comps {
                let Some(k) = values.get(&(lambda, mu)) else { continue };
                report.checks.kl_at_q_zero += 1;
                let at_zero = k.specialize_q0()?;
                if at_zero != kl.element.coefficient(mu) {
                    let mut v = self.violation(
                        ViolationKind::KlAtQZero,
                        Some(lambda),
                        mu,
                        format!("KL coefficient is {:?}", kl.element.coefficient(mu)),
                    );
                    v.value = Some(at_zero);
                    report.violations.push(v);
                }
                for i in 1..=mu.length() {
                    if lambda.part(i) < lambda.part(i + 1) || mu.part(i) <= mu.part(i + 1) {
                        continue;
                    }
                    let s = mu.swap(i);
                    let Some(ks) = values.get(&(lambda, &s)) else { continue };
                    report.checks.mpart += 1;
                    if *ks != k.shift(1, 0) {
                        let mut v = self.violation(
                            ViolationKind::Mpart,
                            Some(lambda),
                            mu,
                            format!("K at s_{i}({mu}) = ({s}) is {ks:?}"),
                        );
                        v.value = Some(k.clone());
                        report.violations.push(v);
                    }
                }
            }
        }
        report.pairs += records.len();
        report.table.extend(records);
        Ok(())
    }

    fn check_record(&self, rec: &PairRecord, report: &mut ScanReport) -> Result<()> {
        let (lambda, mu, k) = (&rec.lambda, &rec.mu, &rec.value);
        report.checks.positivity += 1;
        if !(k.is_nonneg() && k.is_v_polynomial() && k.is_q_polynomial()) {
            let mut v = self.violation(ViolationKind::Positivity, Some(lambda), mu, "K is not in N[v, q]".into());
            v.value = Some(k.clone());
            report.violations.push(v);
        }
        if let Some(e) = k.min_v_exponent() {
            report.min_v_exponent = Some(report.min_v_exponent.map_or(e, |x| x.min(e)));
        }
        if let Some(table) = &rec.marked {
            let mut sum = CoeffPoly::zero();
            for term in table {
                report.checks.marked_positivity += 1;
                let x = &term.value;
                if !(x.is_q_free() && x.is_nonneg() && x.is_v_polynomial()) {
                    let mut v =
                        self.violation(ViolationKind::MarkedPositivity, Some(lambda), mu, "marked K is not in N[v]".into());
                    v.marking = Some(term.diagram.clone());
                    v.value = Some(x.clone());
                    report.violations.push(v);
                }
                sum += &x.shift(0, term.a as i32);
            }
            report.checks.marked_sum += 1;
            if sum != *k {
                let mut v = self.violation(
                    ViolationKind::MarkedSum,
                    Some(lambda),
                    mu,
                    format!("marked values sum to {sum:?}"),
                );
                v.value = Some(k.clone());
                report.violations.push(v);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_zero() {
        let r = scan(&ScanOptions { max_weight: 0, ..Default::default() }).unwrap();
        assert_eq!(r.pairs, 1);
        assert!(r.table[0].value.is_one());
        assert!(r.is_clean());
    }

    #[test]
    fn weight_two_clean() {
        let r = scan(&ScanOptions { max_weight: 2, marked: true, ..Default::default() }).unwrap();
        assert!(r.is_clean(), "{:?}", r.violations);
        // weight 0: 1, weight 1 (len ≤ 2): 2^2, weight 2 (len ≤ 3): 6^2
        assert_eq!(r.pairs, 1 + 4 + 36);
        assert!(r.checks.mpart > 0 && r.checks.kl_at_q_zero == r.pairs);
        let find = |l: &str, m: &str| {
            let (l, m): (Composition, Composition) = (l.parse().unwrap(), m.parse().unwrap());
            r.table.iter().find(|x| x.lambda == l && x.mu == m).unwrap().value.clone()
        };
        assert_eq!(find("2", "1,1"), CoeffPoly::t());
        assert_eq!(find("1,1", "2"), CoeffPoly::q());
    }

    #[test]
    fn csv_output() {
        let r = scan(&ScanOptions { max_weight: 1, ..Default::default() }).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("lambda,mu,K"));
        assert_eq!(lines.next(), Some(r#",,"[{""v"":0,""q"":0,""c"":""1""}]""#));
        assert_eq!(text.lines().count(), 1 + r.pairs);
    }
}

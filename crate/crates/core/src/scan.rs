//! Range scans over denominators: per-number classification records,
//! counterexample search for the A/B (and A/B/C) congruence systems, and
//! CSV/JSON report emission.
//!
//! Work is split into fixed-size chunks of candidates, mapped in parallel on
//! a dedicated pool and concatenated in chunk order, so the output does not
//! depend on the worker count.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, primes_in, SpfSieve};
use crate::error::{domain, Error, Result};
use crate::type_a::{self, t_bound};
use crate::{type_b, type_c};

/// Denominators per work unit.
pub const CHUNK_SIZE: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanFilter {
    /// Every `n = 4k + 1` with `k >= 1`.
    All4k1,
    PrimesOnly,
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub filter: ScanFilter,
    pub workers: usize,
    /// Count distinct Type A triples (exhaustive, slower).
    pub with_counts: bool,
    /// Run the Type C search for `n = 1 (mod 4)`.
    pub type_c: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { filter: ScanFilter::PrimesOnly, workers: 1, with_counts: false, type_c: true }
    }
}

/// One classification row. Field names are the report columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub n: u64,
    pub prime: bool,
    pub k: Option<u64>,
    pub has_a: bool,
    pub a_t: Option<u64>,
    pub a_w: Option<u64>,
    pub a_d: Option<u64>,
    pub has_b: bool,
    pub b_d: Option<u64>,
    pub b_n: Option<u64>,
    pub b_u: Option<u64>,
    /// Empty when the Type C search was not run or does not apply.
    pub has_c: Option<bool>,
    pub c_d: Option<u64>,
    pub c_m: Option<u64>,
    pub both_ab_d: Option<u64>,
    pub distinct_a_count: Option<u64>,
}

impl ScanRecord {
    /// Both-congruence system (A or B) holds.
    pub fn satisfies_ab(&self) -> bool {
        self.has_a || self.has_b
    }
}

/// Classifies a single denominator `n >= 2`.
///
/// For `n = 1 (mod 4)` the divisor forms are used (Type A divisor search,
/// Type B factor search, Type C factor-pair search); otherwise Type A uses
/// the congruence `n = -4d (mod 4dn - 1)` and Type B `n = -n' (mod 4dn' - 1)`.
pub fn scan_record(n: u64, sieve: Option<&SpfSieve>, opts: &ScanOptions) -> Result<ScanRecord> {
    if n < 2 {
        return Err(domain(format!("cannot classify {n}")));
    }
    let prime = is_prime(n);
    let mut rec = ScanRecord {
        n,
        prime,
        k: None,
        has_a: false,
        a_t: None,
        a_w: None,
        a_d: None,
        has_b: false,
        b_d: None,
        b_n: None,
        b_u: None,
        has_c: None,
        c_d: None,
        c_m: None,
        both_ab_d: None,
        distinct_a_count: None,
    };
    if n % 4 == 1 && n >= 5 {
        rec.k = Some((n - 1) / 4);
        if let Some(w) = type_a::find_first_witness(n, sieve)? {
            rec.has_a = true;
            (rec.a_t, rec.a_w, rec.a_d) = (Some(w.t), Some(w.w), Some(w.d));
        }
        if let Some(f) = type_b::factor_search(n, sieve)? {
            let w = f.to_witness();
            rec.has_b = true;
            (rec.b_d, rec.b_n, rec.b_u) = (Some(w.d), Some(w.n), Some(w.u));
        }
        if opts.type_c {
            let c = type_c::find_witness(n, sieve)?;
            rec.has_c = Some(c.is_some());
            if let Some(w) = c {
                (rec.c_d, rec.c_m) = (Some(w.d), Some(w.m));
            }
        }
        if opts.with_counts {
            rec.distinct_a_count = Some(type_a::enumerate_witnesses(n, sieve)?.1 as u64);
        }
    } else {
        if let Some(h) = type_a::congruence_search(n, true, sieve) {
            rec.has_a = true;
            rec.a_d = Some(h.d);
        }
        if let Some(w) = type_b::congruence_search(n, sieve)? {
            rec.has_b = true;
            (rec.b_d, rec.b_n, rec.b_u) = (Some(w.d), Some(w.n), Some(w.u));
        }
    }
    if prime {
        rec.both_ab_d = type_b::both_ab(n)?.map(|s| s.d);
    }
    Ok(rec)
}

fn candidates(lo: u64, hi: u64, filter: ScanFilter) -> Result<Vec<u64>> {
    if lo < 2 || lo > hi {
        return Err(domain(format!("scan range [{lo}, {hi}] needs 2 <= lo <= hi")));
    }
    Ok(match filter {
        ScanFilter::PrimesOnly => primes_in(lo, hi)?,
        ScanFilter::All4k1 => (lo.max(5)..=hi).filter(|n| n % 4 == 1).collect(),
    })
}

fn run_chunked<T, F>(items: &[u64], workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<Option<T>> + Sync,
{
    if workers == 0 {
        return Err(domain("workers must be >= 1"));
    }
    let work = || -> Result<Vec<T>> {
        let parts = items
            .par_chunks(CHUNK_SIZE)
            .map(|chunk| {
                let mut out = Vec::new();
                for &n in chunk {
                    if let Some(v) = f(n)? {
                        out.push(v);
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<Vec<T>>>>()?;
        Ok(parts.into_iter().flatten().collect())
    };
    if workers == 1 {
        return work();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Resource(format!("cannot start {workers} workers: {e}")))?;
    pool.install(work)
}

fn check_sieve(hi: u64, sieve: &SpfSieve) -> Result<()> {
    if hi > sieve.limit() {
        return Err(Error::Resource(format!(
            "range end {hi} exceeds the sieve limit {}",
            sieve.limit()
        )));
    }
    Ok(())
}

/// One record per qualifying `n` in `[lo, hi]`, ascending.
pub fn scan_range(lo: u64, hi: u64, opts: &ScanOptions, sieve: &SpfSieve) -> Result<Vec<ScanRecord>> {
    check_sieve(hi, sieve)?;
    let items = candidates(lo, hi, opts.filter)?;
    run_chunked(&items, opts.workers, |n| scan_record(n, Some(sieve), opts).map(Some))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conjecture {
    /// Type A or Type B.
    AB,
    /// Type A, B or C.
    ABC,
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(Conjecture::AB),
            "2" => Ok(Conjecture::ABC),
            _ => Err(domain(format!("conjecture must be 1 or 2, got {s:?}"))),
        }
    }
}

/// A prime for which every search came back empty, with the extent of each
/// search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub p: u64,
    /// Largest `t` examined by the divisor searches (`n = 1 mod 4`).
    pub t_max: Option<u64>,
    /// Largest `d` examined by the congruence searches.
    pub d_max: Option<u64>,
    pub type_c_checked: bool,
}

fn violates(p: u64, conj: Conjecture, sieve: &SpfSieve) -> Result<Option<Counterexample>> {
    if p % 4 == 1 {
        if type_a::find_first_witness(p, Some(sieve))?.is_some()
            || type_b::factor_search(p, Some(sieve))?.is_some()
            || (conj == Conjecture::ABC && type_c::find_witness(p, Some(sieve))?.is_some())
        {
            return Ok(None);
        }
        return Ok(Some(Counterexample {
            p,
            t_max: Some(t_bound((p - 1) / 4)),
            d_max: None,
            type_c_checked: conj == Conjecture::ABC,
        }));
    }
    if type_a::congruence_search(p, true, Some(sieve)).is_some()
        || type_b::congruence_search(p, Some(sieve))?.is_some()
    {
        return Ok(None);
    }
    Ok(Some(Counterexample { p, t_max: None, d_max: Some((p + 2) / 4), type_c_checked: false }))
}

/// Primes `<= limit` that satisfy none of the conjecture's congruences.
/// Each prime stops at its first successful search.
pub fn find_counterexamples(
    limit: u64,
    conj: Conjecture,
    workers: usize,
    sieve: &SpfSieve,
) -> Result<Vec<Counterexample>> {
    if limit < 2 {
        return Err(domain(format!("limit must be >= 2, got {limit}")));
    }
    check_sieve(limit, sieve)?;
    let primes = primes_in(2, limit)?;
    run_chunked(&primes, workers, |p| violates(p, conj, sieve))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl ReportFormat {
    /// `.json` selects JSON, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => ReportFormat::Json,
            _ => ReportFormat::Csv,
        }
    }
}

/// Serializes records to bytes (UTF-8, LF line endings, CSV header row).
pub fn render_report(records: &[ScanRecord], format: ReportFormat) -> Result<Vec<u8>> {
    let fmt_err = |message: String| Error::Format { path: "<memory>".into(), message };
    match format {
        ReportFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            for r in records {
                w.serialize(r).map_err(|e| fmt_err(e.to_string()))?;
            }
            w.into_inner().map_err(|e| fmt_err(e.to_string()))
        }
        ReportFormat::Json => {
            let mut buf = serde_json::to_vec_pretty(records).map_err(|e| fmt_err(e.to_string()))?;
            buf.push(b'\n');
            Ok(buf)
        }
    }
}

/// Writes the report and returns the number of bytes written.
pub fn write_report(records: &[ScanRecord], format: ReportFormat, path: &Path) -> Result<u64> {
    if records.is_empty() {
        return Err(domain("refusing to write an empty report"));
    }
    let bytes = render_report(records, format)?;
    fs::write(path, &bytes).map_err(|source| Error::Io { path: path.into(), source })?;
    Ok(bytes.len() as u64)
}

pub fn read_report(path: &Path, format: ReportFormat) -> Result<Vec<ScanRecord>> {
    let bytes = fs::read(path).map_err(|source| Error::Io { path: path.into(), source })?;
    let fmt_err = |message: String| Error::Format { path: path.into(), message };
    match format {
        ReportFormat::Csv => csv::Reader::from_reader(bytes.as_slice())
            .deserialize()
            .collect::<std::result::Result<Vec<ScanRecord>, _>>()
            .map_err(|e| fmt_err(e.to_string())),
        ReportFormat::Json => serde_json::from_slice(&bytes).map_err(|e| fmt_err(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve() -> SpfSieve {
        SpfSieve::new(1 << 17).unwrap()
    }

    #[test]
    fn record_2521() {
        let r = scan_record(2521, Some(&sieve()), &ScanOptions::default()).unwrap();
        assert!(!r.has_a && r.has_b);
        let w = type_b::congruence_search(2521, None).unwrap().unwrap();
        assert_eq!((w.d, w.n), (11, 2));
        // the factor form reaches the same solution through its dual
        let (d, n2, m2) = type_b::dual_witness(2521, w.d, w.n).unwrap();
        assert_eq!((d, n2, m2), (11, 29, 1275));
        assert!(r.b_n == Some(2) || r.b_n == Some(29));
        assert_eq!(r.b_d, Some(11));
    }

    #[test]
    fn record_for_small_primes() {
        let s = sieve();
        let r = scan_record(2, Some(&s), &ScanOptions::default()).unwrap();
        assert!(r.has_a && r.has_b && r.k.is_none());
        let r = scan_record(3, Some(&s), &ScanOptions::default()).unwrap();
        assert!(r.has_a);
        assert!(matches!(scan_record(1, Some(&s), &ScanOptions::default()), Err(Error::Domain(_))));
    }

    #[test]
    fn range_errors() {
        let s = SpfSieve::new(100).unwrap();
        let o = ScanOptions::default();
        assert!(matches!(scan_range(2, 200, &o, &s), Err(Error::Resource(_))));
        assert!(matches!(scan_range(50, 10, &o, &s), Err(Error::Domain(_))));
        assert!(matches!(scan_range(1, 10, &o, &s), Err(Error::Domain(_))));
        let zero = ScanOptions { workers: 0, ..o };
        assert!(matches!(scan_range(2, 10, &zero, &s), Err(Error::Domain(_))));
    }

    #[test]
    fn filters() {
        let s = sieve();
        let o = ScanOptions { filter: ScanFilter::All4k1, ..Default::default() };
        let ns: Vec<u64> = scan_range(2, 30, &o, &s).unwrap().iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![5, 9, 13, 17, 21, 25, 29]);
        let ns: Vec<u64> =
            scan_range(2, 30, &ScanOptions::default(), &s).unwrap().iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn small_counterexample_search() {
        let s = sieve();
        assert!(find_counterexamples(100, Conjecture::AB, 1, &s).unwrap().is_empty());
        assert!(find_counterexamples(1, Conjecture::AB, 1, &s).is_err());
    }

    #[test]
    fn empty_optional_is_empty_cell() {
        let r = scan_record(13, None, &ScanOptions::default()).unwrap();
        let csv = String::from_utf8(render_report(&[r], ReportFormat::Csv).unwrap()).unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,prime,k,has_a,a_t,a_w,a_d,has_b,b_d,b_n,b_u,has_c,c_d,c_m,both_ab_d,distinct_a_count"
        );
        assert!(lines.next().unwrap().ends_with(",2,"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn empty_report_rejected() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            write_report(&[], ReportFormat::Csv, &dir.path().join("x.csv")),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn io_error_carries_path() {
        let r = scan_record(13, None, &ScanOptions::default()).unwrap();
        let bad = Path::new("/nonexistent-dir/r.csv");
        match write_report(&[r], ReportFormat::Csv, bad) {
            Err(Error::Io { path, .. }) => assert_eq!(path, bad),
            other => panic!("unexpected {other:?}"),
        }
    }
}

//! C ABI over `erdos_straus`.
//!
//! Every fallible function returns an [`EsStatus`] and writes results through
//! out-pointers. On a status other than `ES_STATUS_OK` or
//! `ES_STATUS_NOT_FOUND`, [`es_last_error_message`] describes the failure.
//! Heap results are opaque handles released by their matching `*_free`
//! function. Panics never cross the boundary; they become `ES_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use erdos_straus::arith::{is_prime, jacobi, SpfSieve};
use erdos_straus::scan::{self, Conjecture, ReportFormat, ScanFilter, ScanOptions, ScanRecord};
use erdos_straus::triple::{enumerate_all, verify};
use erdos_straus::{egyptian_chain, type_a, type_b, type_c, Error, SolutionTriple};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EsStatus {
    Ok = 0,
    /// The search completed without a hit, or the predicate is false.
    NotFound = 1,
    Domain = 2,
    Overflow = 3,
    Resource = 4,
    Internal = 5,
    Io = 6,
    Format = 7,
    NullPointer = 8,
    Panic = 9,
}

/// Solution `4/n = 1/x + 1/y + 1/z` with `x <= y <= z`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EsTriple {
    pub n: u64,
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EsTypeAWitness {
    pub p: u64,
    pub k: u64,
    pub t: u64,
    pub w: u64,
    pub d: u64,
    pub n: u64,
    pub u: u64,
    pub v: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EsTypeBWitness {
    pub a: u64,
    pub d: u64,
    pub n: u64,
    pub u: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EsTypeCWitness {
    pub n_val: u64,
    pub d: u64,
    pub m: u64,
    pub v: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EsOptU64 {
    pub present: bool,
    pub value: u64,
}

/// One scan row. `has_c` is meaningful only when `has_c_checked` is set.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EsScanRecord {
    pub n: u64,
    pub prime: bool,
    pub k: EsOptU64,
    pub has_a: bool,
    pub a_t: EsOptU64,
    pub a_w: EsOptU64,
    pub a_d: EsOptU64,
    pub has_b: bool,
    pub b_d: EsOptU64,
    pub b_n: EsOptU64,
    pub b_u: EsOptU64,
    pub has_c_checked: bool,
    pub has_c: bool,
    pub c_d: EsOptU64,
    pub c_m: EsOptU64,
    pub both_ab_d: EsOptU64,
    pub distinct_a_count: EsOptU64,
}

/// Opaque smallest-prime-factor sieve.
pub struct EsSieve(SpfSieve);

/// Opaque list of triples; each carries its own denominator.
pub struct EsTripleList(Vec<SolutionTriple>);

/// Opaque scan result.
pub struct EsScan(Vec<ScanRecord>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> EsStatus {
    match e {
        Error::Domain(_) => EsStatus::Domain,
        Error::Overflow(_) => EsStatus::Overflow,
        Error::Resource(_) => EsStatus::Resource,
        Error::Internal(_) => EsStatus::Internal,
        Error::Io { .. } => EsStatus::Io,
        Error::Format { .. } => EsStatus::Format,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<EsStatus, Fail>) -> EsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            EsStatus::NullPointer
        }
        Err(_) => {
            set_error("panic inside erdos_straus".into());
            EsStatus::Panic
        }
    }
}

/// # Safety
/// `p` must be null or valid for writes of `T`.
unsafe fn write<T>(p: *mut T, v: T, what: &'static str) -> Result<(), Fail> {
    match p.as_mut() {
        Some(slot) => {
            *slot = v;
            Ok(())
        }
        None => Err(Fail::Null(what)),
    }
}

/// # Safety
/// `s` must be null or a live handle from [`es_sieve_new`].
unsafe fn sieve_ref<'a>(s: *const EsSieve) -> Option<&'a SpfSieve> {
    s.as_ref().map(|s| &s.0)
}

fn triple_out(t: &SolutionTriple) -> EsTriple {
    let [x, y, z] = t.coords();
    EsTriple { n: t.n, x, y, z }
}

fn opt(v: Option<u64>) -> EsOptU64 {
    EsOptU64 { present: v.is_some(), value: v.unwrap_or(0) }
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn es_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn es_is_prime(n: u64) -> bool {
    is_prime(n)
}

/// Writes whether `4/n = 1/x + 1/y + 1/z` to `out`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_verify(n: u64, x: u64, y: u64, z: u64, out: *mut bool) -> EsStatus {
    guard(|| {
        let ok = verify(n, x, y, z)?;
        write(out, ok, "out")?;
        Ok(EsStatus::Ok)
    })
}

/// Jacobi symbol `(a/m)` for odd positive `m`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_jacobi(a: i64, m: u64, out: *mut i8) -> EsStatus {
    guard(|| {
        let j = jacobi(a, m)?;
        write(out, j, "out")?;
        Ok(EsStatus::Ok)
    })
}

/// Builds a sieve covering `[0, limit]`.
///
/// # Safety
/// `out` must be valid for writes. Release the handle with [`es_sieve_free`].
#[no_mangle]
pub unsafe extern "C" fn es_sieve_new(limit: u64, out: *mut *mut EsSieve) -> EsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let s = SpfSieve::new(limit)?;
        *out = Box::into_raw(Box::new(EsSieve(s)));
        Ok(EsStatus::Ok)
    })
}

/// # Safety
/// `sieve` must be null or a handle from [`es_sieve_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn es_sieve_free(sieve: *mut EsSieve) {
    if !sieve.is_null() {
        drop(Box::from_raw(sieve));
    }
}

/// All solutions for `n`, ascending.
///
/// # Safety
/// `out` must be valid for writes. Release with [`es_triple_list_free`].
#[no_mangle]
pub unsafe extern "C" fn es_enumerate_all(n: u64, out: *mut *mut EsTripleList) -> EsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let all = enumerate_all(n)?;
        *out = Box::into_raw(Box::new(EsTripleList(all)));
        Ok(EsStatus::Ok)
    })
}

/// The consecutive run ending at `4 * n!`; entry `i` solves its own `n`.
///
/// # Safety
/// `out` must be valid for writes. Release with [`es_triple_list_free`].
#[no_mangle]
pub unsafe extern "C" fn es_chain(n: u64, out: *mut *mut EsTripleList) -> EsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let run = egyptian_chain::chain(n)?;
        *out = Box::into_raw(Box::new(EsTripleList(run.into_iter().map(|(_, t)| t).collect())));
        Ok(EsStatus::Ok)
    })
}

/// # Safety
/// `list` must be null or a live list handle.
#[no_mangle]
pub unsafe extern "C" fn es_triple_list_len(list: *const EsTripleList) -> usize {
    list.as_ref().map_or(0, |l| l.0.len())
}

/// # Safety
/// `list` must be a live list handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_triple_list_get(list: *const EsTripleList, index: usize, out: *mut EsTriple) -> EsStatus {
    guard(|| {
        let l = list.as_ref().ok_or(Fail::Null("list"))?;
        let t = l
            .0
            .get(index)
            .ok_or_else(|| Error::Domain(format!("index {index} out of range for {} triples", l.0.len())))?;
        write(out, triple_out(t), "out")?;
        Ok(EsStatus::Ok)
    })
}

/// # Safety
/// `list` must be null or a list handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn es_triple_list_free(list: *mut EsTripleList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// First Type A witness of `p = 1 (mod 4)` and its triple.
///
/// # Safety
/// `sieve` may be null. `witness` and `triple` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_type_a_search(
    p: u64,
    sieve: *const EsSieve,
    witness: *mut EsTypeAWitness,
    triple: *mut EsTriple,
) -> EsStatus {
    guard(|| {
        let Some(w) = type_a::find_first_witness(p, sieve_ref(sieve))? else {
            return Ok(EsStatus::NotFound);
        };
        let t = type_a::witness_to_triple(&w)?;
        let out = EsTypeAWitness { p: w.p, k: w.k, t: w.t, w: w.w, d: w.d, n: w.n, u: w.u, v: w.v };
        write(witness, out, "witness")?;
        write(triple, triple_out(&t), "triple")?;
        Ok(EsStatus::Ok)
    })
}

/// First Type B witness `(d, n)` of `a >= 2` by the congruence search.
///
/// # Safety
/// `sieve` may be null. `witness` and `triple` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_type_b_search(
    a: u64,
    sieve: *const EsSieve,
    witness: *mut EsTypeBWitness,
    triple: *mut EsTriple,
) -> EsStatus {
    guard(|| {
        let Some(w) = type_b::congruence_search(a, sieve_ref(sieve))? else {
            return Ok(EsStatus::NotFound);
        };
        let t = type_b::witness_to_triple(&w)?;
        write(witness, EsTypeBWitness { a: w.a, d: w.d, n: w.n, u: w.u }, "witness")?;
        write(triple, triple_out(&t), "triple")?;
        Ok(EsStatus::Ok)
    })
}

/// First Type C witness of `n = 1 (mod 4)`.
///
/// # Safety
/// `sieve` may be null. `witness` and `triple` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_type_c_search(
    n: u64,
    sieve: *const EsSieve,
    witness: *mut EsTypeCWitness,
    triple: *mut EsTriple,
) -> EsStatus {
    guard(|| {
        let Some(w) = type_c::find_witness(n, sieve_ref(sieve))? else {
            return Ok(EsStatus::NotFound);
        };
        let t = type_c::witness_to_triple(&w)?;
        write(witness, EsTypeCWitness { n_val: w.n_val, d: w.d, m: w.m, v: w.v }, "witness")?;
        write(triple, triple_out(&t), "triple")?;
        Ok(EsStatus::Ok)
    })
}

/// Dual of the Type B witness `(d, n)` for `a`: writes `n'` and its modulus.
///
/// # Safety
/// `n_prime` and `modulus` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_dual_witness(a: u64, d: u64, n: u64, n_prime: *mut u64, modulus: *mut u64) -> EsStatus {
    guard(|| {
        let (_, n2, m2) = type_b::dual_witness(a, d, n)?;
        write(n_prime, n2, "n_prime")?;
        write(modulus, m2, "modulus")?;
        Ok(EsStatus::Ok)
    })
}

/// Classifies `[lo, hi]` (primes only, or every `n = 1 mod 4`). The sieve
/// must cover `hi`.
///
/// # Safety
/// `sieve` must be a live handle; `out` must be valid for writes. Release
/// with [`es_scan_free`].
#[no_mangle]
pub unsafe extern "C" fn es_scan_range(
    lo: u64,
    hi: u64,
    primes_only: bool,
    workers: usize,
    with_counts: bool,
    type_c: bool,
    sieve: *const EsSieve,
    out: *mut *mut EsScan,
) -> EsStatus {
    guard(|| {
        let sieve = sieve_ref(sieve).ok_or(Fail::Null("sieve"))?;
        if out.is_null() {
            return Err(Fail::Null("out"));
        }
        let filter = if primes_only { ScanFilter::PrimesOnly } else { ScanFilter::All4k1 };
        let opts = ScanOptions { filter, workers, with_counts, type_c };
        let recs = scan::scan_range(lo, hi, &opts, sieve)?;
        *out = Box::into_raw(Box::new(EsScan(recs)));
        Ok(EsStatus::Ok)
    })
}

/// # Safety
/// `scan` must be null or a live scan handle.
#[no_mangle]
pub unsafe extern "C" fn es_scan_len(scan: *const EsScan) -> usize {
    scan.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `scan` must be a live scan handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_scan_get(scan: *const EsScan, index: usize, out: *mut EsScanRecord) -> EsStatus {
    guard(|| {
        let s = scan.as_ref().ok_or(Fail::Null("scan"))?;
        let r = s
            .0
            .get(index)
            .ok_or_else(|| Error::Domain(format!("index {index} out of range for {} records", s.0.len())))?;
        let rec = EsScanRecord {
            n: r.n,
            prime: r.prime,
            k: opt(r.k),
            has_a: r.has_a,
            a_t: opt(r.a_t),
            a_w: opt(r.a_w),
            a_d: opt(r.a_d),
            has_b: r.has_b,
            b_d: opt(r.b_d),
            b_n: opt(r.b_n),
            b_u: opt(r.b_u),
            has_c_checked: r.has_c.is_some(),
            has_c: r.has_c.unwrap_or(false),
            c_d: opt(r.c_d),
            c_m: opt(r.c_m),
            both_ab_d: opt(r.both_ab_d),
            distinct_a_count: opt(r.distinct_a_count),
        };
        write(out, rec, "out")?;
        Ok(EsStatus::Ok)
    })
}

/// Writes the scan as CSV, or JSON when `json` is set; `bytes` receives the
/// size written.
///
/// # Safety
/// `scan` must be a live scan handle, `path` a NUL-terminated UTF-8 string,
/// and `bytes` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn es_scan_write_report(
    scan: *const EsScan,
    path: *const c_char,
    json: bool,
    bytes: *mut u64,
) -> EsStatus {
    guard(|| {
        let s = scan.as_ref().ok_or(Fail::Null("scan"))?;
        if path.is_null() {
            return Err(Fail::Null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Error::Domain("path is not UTF-8".into()))?;
        let format = if json { ReportFormat::Json } else { ReportFormat::Csv };
        let n = scan::write_report(&s.0, format, Path::new(path))?;
        if let Some(b) = bytes.as_mut() {
            *b = n;
        }
        Ok(EsStatus::Ok)
    })
}

/// # Safety
/// `scan` must be null or a scan handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn es_scan_free(scan: *mut EsScan) {
    if !scan.is_null() {
        drop(Box::from_raw(scan));
    }
}

/// Primes up to `limit` violating conjecture 1 (A or B) or 2 (A, B or C).
/// Up to `cap` of them are copied to `primes`; `count` receives the total.
/// Returns `ES_STATUS_OK` when there are none, `ES_STATUS_NOT_FOUND`
/// otherwise.
///
/// # Safety
/// `sieve` must be a live handle covering `limit`; `primes` must be valid
/// for `cap` writes (or null with `cap == 0`); `count` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn es_find_counterexamples(
    limit: u64,
    conjecture: u32,
    workers: usize,
    sieve: *const EsSieve,
    primes: *mut u64,
    cap: usize,
    count: *mut usize,
) -> EsStatus {
    guard(|| {
        let sieve = sieve_ref(sieve).ok_or(Fail::Null("sieve"))?;
        let conj: Conjecture = conjecture.to_string().parse()?;
        let hits = scan::find_counterexamples(limit, conj, workers, sieve)?;
        write(count, hits.len(), "count")?;
        if cap > 0 {
            if primes.is_null() {
                return Err(Fail::Null("primes"));
            }
            for (i, h) in hits.iter().take(cap).enumerate() {
                *primes.add(i) = h.p;
            }
        }
        Ok(if hits.is_empty() { EsStatus::Ok } else { EsStatus::NotFound })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_mapping() {
        assert_eq!(status_of(&Error::Overflow("x")), EsStatus::Overflow);
        assert_eq!(status_of(&Error::Domain("x".into())), EsStatus::Domain);
    }

    #[test]
    fn null_out_is_reported() {
        let s = unsafe { es_verify(193, 50, 1930, 4825, ptr::null_mut()) };
        assert_eq!(s, EsStatus::NullPointer);
        let msg = unsafe { CStr::from_ptr(es_last_error_message()) };
        assert!(msg.to_str().unwrap().contains("out"));
    }
}

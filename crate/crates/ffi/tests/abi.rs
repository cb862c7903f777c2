//! The C ABI exercised from Rust.

use std::ffi::{CStr, CString};
use std::ptr;

use erdos_straus_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(es_last_error_message()).to_string_lossy().into_owned() }
}

struct Sieve(*mut EsSieve);

impl Sieve {
    fn new(limit: u64) -> Self {
        let mut s = ptr::null_mut();
        assert_eq!(unsafe { es_sieve_new(limit, &mut s) }, EsStatus::Ok);
        Sieve(s)
    }
}

impl Drop for Sieve {
    fn drop(&mut self) {
        unsafe { es_sieve_free(self.0) }
    }
}

#[test]
fn verify_and_jacobi() {
    let mut ok = false;
    assert_eq!(unsafe { es_verify(193, 50, 1930, 4825, &mut ok) }, EsStatus::Ok);
    assert!(ok);
    assert_eq!(unsafe { es_verify(193, 50, 1930, 4826, &mut ok) }, EsStatus::Ok);
    assert!(!ok);
    let mut j = 0i8;
    assert_eq!(unsafe { es_jacobi(-2, 7, &mut j) }, EsStatus::Ok);
    assert_eq!(j, -1);
    assert_eq!(unsafe { es_jacobi(3, 8, &mut j) }, EsStatus::Domain);
    assert!(!last_error().is_empty());
    assert!(es_is_prime(104729) && !es_is_prime(83449 * 3));
}

#[test]
fn witnesses() {
    let sieve = Sieve::new(1 << 16);
    let mut b = EsTypeBWitness::default();
    let mut t = EsTriple::default();
    assert_eq!(unsafe { es_type_b_search(2521, sieve.0, &mut b, &mut t) }, EsStatus::Ok);
    assert_eq!((b.d, b.n, b.u), (11, 2, 29));
    assert_eq!((t.n, t.x, t.y, t.z), (2521, 638, 55462, 804199));

    let (mut n2, mut m2) = (0, 0);
    assert_eq!(unsafe { es_dual_witness(2521, 11, 2, &mut n2, &mut m2) }, EsStatus::Ok);
    assert_eq!((n2, m2), (29, 1275));

    let mut a = EsTypeAWitness::default();
    assert_eq!(unsafe { es_type_a_search(193, sieve.0, &mut a, &mut t) }, EsStatus::NotFound);
    assert_eq!(unsafe { es_type_a_search(13, ptr::null(), &mut a, &mut t) }, EsStatus::Ok);
    assert_eq!(a.p, 13);

    let mut c = EsTypeCWitness::default();
    assert_eq!(unsafe { es_type_c_search(17, ptr::null(), &mut c, &mut t) }, EsStatus::Ok);
    let mut ok = false;
    unsafe { es_verify(17, t.x, t.y, t.z, &mut ok) };
    assert!(ok);
    assert_eq!(unsafe { es_type_c_search(16, ptr::null(), &mut c, &mut t) }, EsStatus::Domain);
}

#[test]
fn lists() {
    let mut list = ptr::null_mut();
    assert_eq!(unsafe { es_enumerate_all(9, &mut list) }, EsStatus::Ok);
    assert_eq!(unsafe { es_triple_list_len(list) }, 6);
    let mut t = EsTriple::default();
    assert_eq!(unsafe { es_triple_list_get(list, 0, &mut t) }, EsStatus::Ok);
    assert_eq!((t.x, t.y, t.z), (3, 10, 90));
    assert_eq!(unsafe { es_triple_list_get(list, 6, &mut t) }, EsStatus::Domain);
    unsafe { es_triple_list_free(list) };

    let mut run = ptr::null_mut();
    assert_eq!(unsafe { es_chain(4, &mut run) }, EsStatus::Ok);
    assert_eq!(unsafe { es_triple_list_len(run) }, 8);
    unsafe { es_triple_list_get(run, 0, &mut t) };
    assert_eq!((t.n, t.x, t.y, t.z), (89, 24, 534, 712));
    unsafe { es_triple_list_free(run) };

    assert_eq!(unsafe { es_chain(21, &mut run) }, EsStatus::Resource);
    assert_eq!(unsafe { es_chain(13, &mut run) }, EsStatus::Overflow);
    assert_eq!(unsafe { es_enumerate_all(9, ptr::null_mut()) }, EsStatus::NullPointer);
    unsafe { es_triple_list_free(ptr::null_mut()) };
}

#[test]
fn scan_and_report() {
    let sieve = Sieve::new(20_000);
    let mut scan = ptr::null_mut();
    assert_eq!(unsafe { es_scan_range(2, 9000, true, 2, false, true, sieve.0, &mut scan) }, EsStatus::Ok);
    let len = unsafe { es_scan_len(scan) };
    let mut missing = Vec::new();
    for i in 0..len {
        let mut r = EsScanRecord::default();
        assert_eq!(unsafe { es_scan_get(scan, i, &mut r) }, EsStatus::Ok);
        if !r.has_a {
            assert!(r.has_b);
            missing.push(r.n);
        }
    }
    assert_eq!(missing, [193, 2521]);

    let dir = tempfile::tempdir().unwrap();
    let path = CString::new(dir.path().join("r.csv").to_str().unwrap()).unwrap();
    let mut bytes = 0u64;
    assert_eq!(unsafe { es_scan_write_report(scan, path.as_ptr(), false, &mut bytes) }, EsStatus::Ok);
    assert_eq!(std::fs::metadata(dir.path().join("r.csv")).unwrap().len(), bytes);
    let bad = CString::new("/nonexistent-dir/r.csv").unwrap();
    assert_eq!(unsafe { es_scan_write_report(scan, bad.as_ptr(), false, &mut bytes) }, EsStatus::Io);
    assert!(last_error().contains("/nonexistent-dir/r.csv"));
    unsafe { es_scan_free(scan) };

    assert_eq!(unsafe { es_scan_range(2, 30_000, true, 1, false, true, sieve.0, &mut scan) }, EsStatus::Resource);
}

#[test]
fn counterexamples() {
    let sieve = Sieve::new(20_000);
    let mut buf = [0u64; 4];
    let mut count = 99usize;
    let s = unsafe { es_find_counterexamples(20_000, 1, 4, sieve.0, buf.as_mut_ptr(), buf.len(), &mut count) };
    assert_eq!((s, count), (EsStatus::Ok, 0));
    let s = unsafe { es_find_counterexamples(100, 3, 1, sieve.0, ptr::null_mut(), 0, &mut count) };
    assert_eq!(s, EsStatus::Domain);
}

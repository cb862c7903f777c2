//! Type A solutions `(du, dv, duv)`.
//!
//! For `p = 4k + 1` the divisor form searches `t >= 0` and a divisor `w` of
//! `k + 1 + t` with `w = -1 (mod 3 + 4t)`; every hit builds
//!
//! ```text
//! d = (k+1+t)/w,  n = (w+1)/(3+4t),  v = np,  u = (1+np)/(4dn-1)
//! ```
//!
//! For primes the divisor form is an exact characterization. For composites
//! only the constructive direction holds (25 has Type A solutions that the
//! divisor form never reaches).
//!
//! The congruence form `p = -4d (mod 4dn - 1)` works for any residue class
//! and is the detector used for `p = 3 (mod 4)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{checked_add, checked_mul, divisors_with, SpfSieve};
use crate::error::{domain, Error, Result};
use crate::triple::SolutionTriple;

/// Parameters of a Type A solution found through the divisor form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeAWitness {
    pub p: u64,
    pub k: u64,
    pub t: u64,
    pub w: u64,
    pub d: u64,
    pub n: u64,
    pub u: u64,
    pub v: u64,
}

/// `k` for `p = 4k + 1` with `k >= 1`.
pub(crate) fn k_of(p: u64) -> Result<u64> {
    if p % 4 != 1 || p < 5 {
        return Err(domain(format!("expected p = 4k + 1 with k >= 1, got {p}")));
    }
    Ok((p - 1) / 4)
}

/// Upper end of the t-range, `floor((k - 1) / 3)`. Past it every divisor of
/// `k + 1 + t` is smaller than `2 + 4t`.
pub fn t_bound(k: u64) -> u64 {
    k.saturating_sub(1) / 3
}

/// Largest `d` any Type A solution of a prime `p = 4k + 1` can have.
pub fn d_bound(p: u64) -> u64 {
    (p + 3) / 8
}

fn build(p: u64, k: u64, t: u64, w: u64) -> Result<TypeAWitness> {
    let s = 3 + 4 * t;
    let big = k + 1 + t;
    let d = big / w;
    let n = (w + 1) / s;
    let v = checked_mul(n, p, "type A witness")?;
    let num = checked_add(1, v, "type A witness")?;
    let modulus = checked_mul(4 * d, n, "type A witness")? - 1;
    if big % w != 0 || (w + 1) % s != 0 || num % modulus != 0 {
        return Err(Error::Internal(format!("bad Type A divisor witness t={t}, w={w} for {p}")));
    }
    Ok(TypeAWitness { p, k, t, w, d, n, u: num / modulus, v })
}

fn witnesses_for_t(k: u64, t: u64, sieve: Option<&SpfSieve>) -> impl Iterator<Item = u64> {
    let s = 3 + 4 * t;
    divisors_with(k + 1 + t, sieve)
        .into_iter()
        .filter(move |w| w % s == s - 1)
}

/// First witness in `(t, w)` ascending order, or `None` when the divisor
/// form has no hit.
pub fn find_first_witness(p: u64, sieve: Option<&SpfSieve>) -> Result<Option<TypeAWitness>> {
    let k = k_of(p)?;
    for t in 0..=t_bound(k) {
        if let Some(w) = witnesses_for_t(k, t, sieve).next() {
            return build(p, k, t, w).map(Some);
        }
    }
    Ok(None)
}

/// Every divisor-form witness, plus the number of distinct sorted triples
/// they produce.
pub fn enumerate_witnesses(
    p: u64,
    sieve: Option<&SpfSieve>,
) -> Result<(Vec<TypeAWitness>, usize)> {
    let k = k_of(p)?;
    let mut all = Vec::new();
    let mut triples = BTreeSet::new();
    for t in 0..=t_bound(k) {
        for w in witnesses_for_t(k, t, sieve) {
            let wit = build(p, k, t, w)?;
            triples.insert(witness_to_triple(&wit)?.coords());
            all.push(wit);
        }
    }
    Ok((all, triples.len()))
}

/// The sorted triple `(du, dv, duv)`.
pub fn witness_to_triple(w: &TypeAWitness) -> Result<SolutionTriple> {
    let s = 3 + 4 * w.t;
    let consistent = w.p == 4 * w.k + 1
        && w.w > 0
        && (w.k + 1 + w.t) % w.w == 0
        && w.w % s == s - 1
        && w.d == (w.k + 1 + w.t) / w.w
        && w.n == (w.w + 1) / s
        && Some(w.v) == w.n.checked_mul(w.p);
    if !consistent {
        return Err(Error::Internal(format!("inconsistent Type A witness {w:?}")));
    }
    triple_from_duv(w.p, w.d, w.u, w.v)
}

pub(crate) fn triple_from_duv(p: u64, d: u64, u: u64, v: u64) -> Result<SolutionTriple> {
    let du = checked_mul(d, u, "type A triple")?;
    let dv = checked_mul(d, v, "type A triple")?;
    let duv = checked_mul(du, v, "type A triple")?;
    SolutionTriple::new(p, [du, dv, duv])
}

/// A hit of the congruence form `p = -4d (mod 4dn - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceHit {
    pub p: u64,
    pub d: u64,
    pub n: u64,
}

impl CongruenceHit {
    pub fn modulus(&self) -> u64 {
        4 * self.d * self.n - 1
    }

    /// `u = (1 + np)/(4dn - 1)`, `v = np`, triple `(du, dv, duv)`.
    pub fn to_triple(&self) -> Result<SolutionTriple> {
        let v = checked_mul(self.n, self.p, "type A congruence")?;
        let num = checked_add(v, 1, "type A congruence")?;
        let m = self.modulus();
        if num % m != 0 {
            return Err(Error::Internal(format!("{self:?} does not satisfy np = -1")));
        }
        triple_from_duv(self.p, self.d, num / m, v)
    }
}

/// Searches `p = -4d (mod 4dn - 1)` in `(d, n)` order.
///
/// The modulus `4dn - 1` runs over divisors of `p + 4d` that are `-1 mod 4d`.
/// With `exhaustive` the scan covers `d <= floor((p + 2)/4)`, which contains
/// every solution of the congruence (`n = 1` forces `4d - 1 <= p + 1`, and
/// larger `n` only shrinks `d`). Without it the scan stops at
/// `floor((p + 3)/8)`, the bound on `d` for primes `p = 1 (mod 4)`.
pub fn congruence_search(p: u64, exhaustive: bool, sieve: Option<&SpfSieve>) -> Option<CongruenceHit> {
    if p < 2 {
        return None;
    }
    let d_max = if exhaustive { (p + 2) / 4 } else { d_bound(p) };
    for d in 1..=d_max {
        let four_d = 4 * d;
        let hit = divisors_with(p.checked_add(four_d)?, sieve)
            .into_iter()
            .find(|m| m % four_d == four_d - 1);
        if let Some(m) = hit {
            return Some(CongruenceHit { p, d, n: (m + 1) / four_d });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::{gcd_class, GcdClass};

    #[test]
    fn first_witness_examples() {
        let w = find_first_witness(13, None).unwrap().unwrap();
        assert_eq!((w.t, w.w, w.d, w.n, w.u, w.v), (0, 2, 2, 1, 2, 13));
        assert_eq!(witness_to_triple(&w).unwrap().coords(), [4, 26, 52]);

        assert_eq!(find_first_witness(193, None).unwrap(), None);

        let w = find_first_witness(5, None).unwrap().unwrap();
        assert_eq!((w.t, w.w, w.d, w.n, w.u, w.v), (0, 2, 1, 1, 2, 5));
        assert_eq!(witness_to_triple(&w).unwrap().coords(), [2, 5, 10]);
    }

    #[test]
    fn rejects_wrong_residue() {
        assert!(matches!(find_first_witness(7, None), Err(Error::Domain(_))));
        assert!(matches!(find_first_witness(1, None), Err(Error::Domain(_))));
        assert!(matches!(enumerate_witnesses(11, None), Err(Error::Domain(_))));
    }

    #[test]
    fn triple_for_17() {
        let w = TypeAWitness { p: 17, k: 4, t: 0, w: 5, d: 1, n: 2, u: 5, v: 34 };
        assert_eq!(witness_to_triple(&w).unwrap().coords(), [5, 34, 170]);
        let bad = TypeAWitness { w: 4, ..w };
        assert!(matches!(witness_to_triple(&bad), Err(Error::Internal(_))));
    }

    #[test]
    fn u_equals_w() {
        for p in (5..3000).step_by(4) {
            for w in enumerate_witnesses(p, None).unwrap().0 {
                assert_eq!(w.u, w.w, "p = {p}");
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let (all, distinct) = enumerate_witnesses(13, None).unwrap();
        assert_eq!((all.len(), distinct), (1, 1));
        let (all, distinct) = enumerate_witnesses(2521, None).unwrap();
        assert_eq!((all.len(), distinct), (0, 0));
    }

    #[test]
    fn congruence_examples() {
        let h = congruence_search(17, true, None).unwrap();
        assert_eq!((h.d, h.n), (1, 1));
        assert_eq!(h.to_triple().unwrap().coords(), [6, 17, 102]);

        let h = congruence_search(7, true, None).unwrap();
        assert_eq!((h.d, h.n), (1, 3));
        assert_eq!(h.to_triple().unwrap().coords(), [2, 21, 42]);

        assert_eq!(congruence_search(193, true, None), None);
        assert_eq!(congruence_search(1, true, None), None);
    }

    #[test]
    fn prime_witnesses_are_type_ii() {
        for p in crate::arith::primes_in(5, 2000).unwrap() {
            if p % 4 == 1 {
                if let Some(w) = find_first_witness(p, None).unwrap() {
                    let t = witness_to_triple(&w).unwrap();
                    assert_eq!(gcd_class(&t), GcdClass::TypeII, "p = {p}");
                    assert_eq!(crate::arith::gcd(w.u, w.v), 1);
                }
            }
            if let Some(h) = congruence_search(p, true, None) {
                assert_eq!(gcd_class(&h.to_triple().unwrap()), GcdClass::TypeII, "p = {p}");
            }
        }
    }

    #[test]
    fn d_bound_attained_at_13() {
        let w = find_first_witness(13, None).unwrap().unwrap();
        assert_eq!(w.d, d_bound(13));
        assert_eq!(d_bound(13), 2);
    }
}

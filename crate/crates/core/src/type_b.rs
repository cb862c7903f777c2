//! Type B solutions `(duv, dua, dva)` for a denominator `a`.
//!
//! Congruence form: `a = -n (mod 4dn - 1)`, then `u = (a + n)/(4dn - 1)`,
//! `v = n`. Since `gcd(4d, 4dn - 1) = 1`,
//!
//! ```text
//! 4dn - 1 | a + n   <=>   4dn - 1 | 4da + 1
//! ```
//!
//! and in fact `4da + 1 = (4dn - 1)(4du - 1)`, so the search enumerates
//! divisors of `4da + 1` and always terminates.
//!
//! Factor form, for `a = 4k + 1`: some `t >= 0` and `x, y` with `x + y = 3 + 4t`
//! and `xy | k + 1 + t`. Then `n = x`, `u = y`, `d = (k + 1 + t)/(xy)`.
//! Neither form uses primality, so both hold for composite `a`.

use serde::{Deserialize, Serialize};

use crate::arith::{checked_add, checked_mul, divisors_with, SpfSieve};
use crate::error::{domain, Error, Result};
use crate::triple::SolutionTriple;
use crate::type_a::{k_of, t_bound};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeBWitness {
    /// The denominator.
    pub a: u64,
    pub d: u64,
    pub n: u64,
    pub u: u64,
}

impl TypeBWitness {
    pub fn modulus(&self) -> u64 {
        4 * self.d * self.n - 1
    }
}

/// Factor-form witness: `a_div + b_div = 3 + 4t` and
/// `a_div * b_div * d = k + 1 + t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorWitness {
    pub k: u64,
    pub t: u64,
    pub a_div: u64,
    pub b_div: u64,
    pub d: u64,
}

impl FactorWitness {
    pub fn to_witness(&self) -> TypeBWitness {
        TypeBWitness { a: 4 * self.k + 1, d: self.d, n: self.a_div, u: self.b_div }
    }
}

/// First `(d, n)` with `a = -n (mod 4dn - 1)`.
///
/// `u >= 1` gives `n(4d - 1) <= a + 1`, so `d <= floor((a + 2)/4)`.
pub fn congruence_search(a: u64, sieve: Option<&SpfSieve>) -> Result<Option<TypeBWitness>> {
    if a < 2 {
        return Err(domain(format!("Type B search needs a >= 2, got {a}")));
    }
    for d in 1..=(a + 2) / 4 {
        let four_d = 4 * d;
        let target = checked_add(checked_mul(four_d, a, "type B search")?, 1, "type B search")?;
        let hit = divisors_with(target, sieve)
            .into_iter()
            .find(|m| m % four_d == four_d - 1);
        if let Some(m) = hit {
            let n = (m + 1) / four_d;
            return Ok(Some(TypeBWitness { a, d, n, u: (a + n) / m }));
        }
    }
    Ok(None)
}

/// First factor-form witness in `(t, a_div)` ascending order.
pub fn factor_search(a: u64, sieve: Option<&SpfSieve>) -> Result<Option<FactorWitness>> {
    let k = k_of(a)?;
    for t in 0..=t_bound(k) {
        let big = k + 1 + t;
        let s = 3 + 4 * t;
        for x in divisors_with(big, sieve) {
            if x >= s {
                break;
            }
            let y = s - x;
            if big % (x * y) == 0 {
                return Ok(Some(FactorWitness { k, t, a_div: x, b_div: y, d: big / (x * y) }));
            }
        }
    }
    Ok(None)
}

/// The sorted triple `(dun, dua, dna)`.
pub fn witness_to_triple(w: &TypeBWitness) -> Result<SolutionTriple> {
    if w.d == 0 || w.n == 0 || w.u == 0 {
        return Err(Error::Internal(format!("non-positive Type B witness {w:?}")));
    }
    let m = checked_mul(4 * w.d, w.n, "type B triple")? - 1;
    let sum = checked_add(w.a, w.n, "type B triple")?;
    if sum % m != 0 || sum / m != w.u {
        return Err(Error::Internal(format!("inconsistent Type B witness {w:?}")));
    }
    let du = checked_mul(w.d, w.u, "type B triple")?;
    SolutionTriple::new(
        w.a,
        [
            checked_mul(du, w.n, "type B triple")?,
            checked_mul(du, w.a, "type B triple")?,
            checked_mul(checked_mul(w.d, w.n, "type B triple")?, w.a, "type B triple")?,
        ],
    )
}

/// The companion congruence of `a = -n (mod 4dn - 1)`: returns
/// `(d, n', modulus')` with `n' = (a + n)/(4dn - 1)` and
/// `modulus' = (4ad + 1)/(4dn - 1) = 4dn' - 1`. Applying it twice gives back
/// `(d, n, 4dn - 1)`.
pub fn dual_witness(a: u64, d: u64, n: u64) -> Result<(u64, u64, u64)> {
    if a == 0 || d == 0 || n == 0 {
        return Err(domain("dual_witness needs positive arguments"));
    }
    let m = checked_mul(4 * d, n, "dual witness")? - 1;
    let sum = checked_add(a, n, "dual witness")?;
    if sum % m != 0 {
        return Err(domain(format!("{a} is not -{n} mod {m}")));
    }
    let four_ad1 = checked_add(checked_mul(4 * d, a, "dual witness")?, 1, "dual witness")?;
    Ok((d, sum / m, four_ad1 / m))
}

/// A solution that is simultaneously of Type A and Type B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedSolution {
    pub d: u64,
    pub u: u64,
    pub triple: SolutionTriple,
}

/// Smallest `d` with `4d - 1 | p + 1`, and the shared triple
/// `(du, dp, dup)` with `u = (p + 1)/(4d - 1)`. For primes this is exactly
/// the case of a solution carrying both shapes.
pub fn both_ab(p: u64) -> Result<Option<SharedSolution>> {
    if p < 2 {
        return Err(domain(format!("both_ab needs p >= 2, got {p}")));
    }
    let target = p + 1;
    let mut d = 1;
    while 4 * d - 1 <= target {
        let m = 4 * d - 1;
        if target % m == 0 {
            let u = target / m;
            let du = checked_mul(d, u, "both_ab")?;
            let triple = SolutionTriple::new(
                p,
                [du, checked_mul(d, p, "both_ab")?, checked_mul(du, p, "both_ab")?],
            )?;
            return Ok(Some(SharedSolution { d, u, triple }));
        }
        d += 1;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_perfect_square, jacobi};
    use crate::triple::match_structure;

    #[test]
    fn congruence_examples() {
        let w = congruence_search(193, None).unwrap().unwrap();
        assert_eq!((w.d, w.n, w.u), (2, 2, 13));
        assert_eq!(witness_to_triple(&w).unwrap().coords(), [52, 772, 5018]);

        let w = congruence_search(2521, None).unwrap().unwrap();
        assert_eq!((w.d, w.n, w.u), (11, 2, 29));

        assert_eq!(congruence_search(15, None).unwrap(), None);
        assert!(matches!(congruence_search(1, None), Err(Error::Domain(_))));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(
            factor_search(193, None).unwrap(),
            Some(FactorWitness { k: 48, t: 1, a_div: 2, b_div: 5, d: 5 })
        );
        assert_eq!(
            factor_search(5, None).unwrap(),
            Some(FactorWitness { k: 1, t: 0, a_div: 1, b_div: 2, d: 1 })
        );
        assert_eq!(factor_search(25, None).unwrap(), None);
        assert!(matches!(factor_search(15, None), Err(Error::Domain(_))));
    }

    #[test]
    fn factor_witness_builds_type_b() {
        let w = factor_search(193, None).unwrap().unwrap().to_witness();
        assert_eq!((w.d, w.n, w.u), (5, 2, 5));
        assert_eq!(witness_to_triple(&w).unwrap().coords(), [50, 1930, 4825]);
    }

    #[test]
    fn triple_examples() {
        let t = |a, d, n, u| witness_to_triple(&TypeBWitness { a, d, n, u }).unwrap().coords();
        assert_eq!(t(193, 5, 5, 2), [50, 1930, 4825]);
        assert_eq!(t(2521, 11, 2, 29), [638, 55462, 804_199]);
        assert_eq!(t(6, 2, 1, 1), [2, 12, 12]);
        assert!(matches!(
            witness_to_triple(&TypeBWitness { a: 6, d: 2, n: 1, u: 2 }),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_witness(2521, 11, 2).unwrap(), (11, 29, 1275));
        assert_eq!(dual_witness(193, 5, 5).unwrap(), (5, 2, 39));
        assert_eq!(dual_witness(193, 5, 2).unwrap(), (5, 5, 99));
        assert!(matches!(dual_witness(193, 1, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn both_ab_examples() {
        let s = both_ab(5).unwrap().unwrap();
        assert_eq!((s.d, s.triple.coords()), (1, [2, 5, 10]));
        let s = both_ab(13).unwrap().unwrap();
        assert_eq!((s.d, s.triple.coords()), (2, [4, 26, 52]));
        assert_eq!(both_ab(193).unwrap(), None);
        for p in crate::arith::primes_in(2, 3000).unwrap() {
            if let Some(s) = both_ab(p).unwrap() {
                let m = match_structure(&s.triple);
                assert!(m.type_a.is_some() && m.type_b.is_some(), "p = {p}");
            }
        }
    }

    #[test]
    fn modulus_factors_as_product_of_duals() {
        for a in 2..400u64 {
            if let Some(w) = congruence_search(a, None).unwrap() {
                assert_eq!(4 * w.d * a + 1, (4 * w.d * w.n - 1) * (4 * w.d * w.u - 1));
            }
        }
    }

    #[test]
    fn squares_have_no_type_b() {
        for r in (1u64..=100).step_by(2) {
            let s = r * r;
            if s >= 5 {
                assert_eq!(factor_search(s, None).unwrap(), None, "s = {s}");
            }
        }
        assert!(is_perfect_square(25).is_some());
    }

    #[test]
    fn minus_n_is_a_non_residue() {
        for d in 1..=10i64 {
            for n in 1..=10i64 {
                assert_eq!(jacobi(-n, (4 * d * n - 1) as u64).unwrap(), -1);
            }
        }
    }
}

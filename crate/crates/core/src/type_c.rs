//! Type C solutions `(uv, uwn, vwn)` for `n = 4k + 1`.
//!
//! The following are equivalent and all four are implemented:
//!
//! * `n = S(x, z, t)` for some `x, z >= 1`, `t >= 0` (see [`crate::polyform`]);
//! * `-n = 4d^2 (mod 4dm - 1)` for some `d, m >= 1`;
//! * `n` has a solution of shape `(uv, uwn, vwn)`;
//! * for some `t >= 0`, `k + 1 + t = ab` with `3 + 4t | a + b`.
//!
//! The last form drives the search: `d = a`, `m = (a + b)/(3 + 4t)`, and
//! `v = (d + nm)/(4dm - 1)`. Since `a + b <= k + 2 + t`, only
//! `t <= floor((k - 1)/3)` can contribute.

use serde::{Deserialize, Serialize};

use crate::arith::{checked_add, checked_mul, divisors_with, gcd, SpfSieve};
use crate::error::{Error, Result};
use crate::triple::SolutionTriple;
use crate::type_a::{k_of, t_bound};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCWitness {
    pub n_val: u64,
    pub d: u64,
    pub m: u64,
    pub v: u64,
}

impl TypeCWitness {
    pub fn modulus(&self) -> u64 {
        4 * self.d * self.m - 1
    }

    /// `-n = 4d^2 (mod 4dm - 1)`.
    pub fn congruence_holds(&self) -> bool {
        let m = self.modulus() as u128;
        (self.n_val as u128 + 4 * (self.d as u128).pow(2)) % m == 0
    }
}

fn witness(n_val: u64, d: u64, m: u64) -> Result<Option<TypeCWitness>> {
    let modulus = checked_mul(4 * d, m, "type C witness")? - 1;
    let num = checked_add(d, checked_mul(n_val, m, "type C witness")?, "type C witness")?;
    Ok((num % modulus == 0).then(|| TypeCWitness { n_val, d, m, v: num / modulus }))
}

/// First witness in `(t, a)` ascending order.
pub fn find_witness(n_val: u64, sieve: Option<&SpfSieve>) -> Result<Option<TypeCWitness>> {
    let k = k_of(n_val)?;
    for t in 0..=t_bound(k) {
        let big = k + 1 + t;
        let s = 3 + 4 * t;
        for a in divisors_with(big, sieve) {
            let b = big / a;
            if (a + b) % s == 0 {
                return match witness(n_val, a, (a + b) / s)? {
                    Some(w) => Ok(Some(w)),
                    None => Err(Error::Internal(format!(
                        "factor pair ({a}, {b}) at t={t} gives no Type C witness for {n_val}"
                    ))),
                };
            }
        }
    }
    Ok(None)
}

/// The sorted triple `(dv, dmn, mvn)`; it carries the Type C shape with
/// `u = d`, `w = m`.
pub fn witness_to_triple(w: &TypeCWitness) -> Result<SolutionTriple> {
    if w.d == 0 || w.m == 0 || w.v == 0 || witness(w.n_val, w.d, w.m)? != Some(*w) {
        return Err(Error::Internal(format!("inconsistent Type C witness {w:?}")));
    }
    let dm = checked_mul(w.d, w.m, "type C triple")?;
    SolutionTriple::new(
        w.n_val,
        [
            checked_mul(w.d, w.v, "type C triple")?,
            checked_mul(dm, w.n_val, "type C triple")?,
            checked_mul(checked_mul(w.m, w.v, "type C triple")?, w.n_val, "type C triple")?,
        ],
    )
}

/// Values `u <= u_cap` passing the quadratic-residue necessary condition:
/// `gcd(n, 4u - 1) = 1`, `-n = x0^2 (mod 4u - 1)` is solvable, and for some
/// root the even member of `{x0, 4u - 1 - x0}`, halved, divides `u`.
///
/// A pruning filter only: passing it says nothing about existence.
pub fn qr_filter(n_val: u64, u_cap: u64) -> Vec<u64> {
    (1..=u_cap)
        .filter(|&u| {
            let modulus = 4 * u - 1;
            if gcd(n_val, modulus) != 1 {
                return false;
            }
            let target = (modulus - n_val % modulus) % modulus;
            (0..modulus).any(|x0| {
                if (x0 as u128 * x0 as u128 % modulus as u128) as u64 != target {
                    return false;
                }
                let even = if x0 % 2 == 0 { x0 } else { modulus - x0 };
                even > 0 && u % (even / 2) == 0
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::match_structure;

    #[test]
    fn find_examples() {
        let w = find_witness(5, None).unwrap().unwrap();
        assert_eq!((w.d, w.m, w.v), (1, 1, 2));
        assert!(w.congruence_holds());
        let w = find_witness(17, None).unwrap().unwrap();
        assert_eq!((w.d, w.m, w.v), (1, 2, 5));
        assert_eq!(find_witness(9, None).unwrap(), None);
        assert!(matches!(find_witness(7, None), Err(Error::Domain(_))));
    }

    #[test]
    fn triple_examples() {
        let t5 = witness_to_triple(&TypeCWitness { n_val: 5, d: 1, m: 1, v: 2 }).unwrap();
        assert_eq!(t5.coords(), [2, 5, 10]);
        assert!(match_structure(&t5).type_c.is_some());
        let t17 = witness_to_triple(&TypeCWitness { n_val: 17, d: 1, m: 2, v: 5 }).unwrap();
        assert_eq!(t17.coords(), [5, 34, 170]);
        assert!(matches!(
            witness_to_triple(&TypeCWitness { n_val: 17, d: 1, m: 2, v: 6 }),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn qr_filter_examples() {
        assert_eq!(qr_filter(5, 1), vec![1]);
        assert!(qr_filter(17, 2).contains(&2));
        assert!(!qr_filter(13, 2).contains(&2));
    }

    #[test]
    fn witnesses_pass_filter() {
        for n in (5..=600).step_by(4) {
            if let Some(w) = find_witness(n, None).unwrap() {
                assert!(qr_filter(n, w.d * w.m).contains(&(w.d * w.m)), "n = {n}");
            }
        }
    }
}

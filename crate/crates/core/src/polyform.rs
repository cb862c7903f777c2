//! The polynomial family attached to the solution shapes:
//!
//! ```text
//! P(x,y,t)   = (4xy - 1)(3 + 4t) - 4x^2 y     Type B
//! Q(x,y,t)   = (4xy - 1)(3 + 4t) - 4y         Type A (primes)
//! R(x,y,t,z) = (4xyz - 1)(3 + 4t) - 4x^2 y    Type II
//! S(x,y,t)   = R(x,1,t,y) = (4xy - 1)(3 + 4t) - 4x^2   Type C
//! ```
//!
//! with `x, y, z >= 1` and `t >= 0`. Positive values are always `1 mod 4`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::triple::SolutionTriple;
use crate::type_b::{self, TypeBWitness};
use crate::type_c::{self, TypeCWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyId {
    P,
    Q,
    R,
    S,
}

impl PolyId {
    pub const ALL: [PolyId; 4] = [PolyId::P, PolyId::Q, PolyId::R, PolyId::S];

    pub fn arity(self) -> usize {
        match self {
            PolyId::R => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for PolyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolyId::P => "P",
            PolyId::Q => "Q",
            PolyId::R => "R",
            PolyId::S => "S",
        })
    }
}

impl FromStr for PolyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(PolyId::P),
            "Q" | "q" => Ok(PolyId::Q),
            "R" | "r" => Ok(PolyId::R),
            "S" | "s" => Ok(PolyId::S),
            _ => Err(domain(format!("unknown polynomial {s:?}"))),
        }
    }
}

struct Checked(i128);

impl Checked {
    fn mul(self, o: i128) -> Result<Self> {
        self.0.checked_mul(o).map(Checked).ok_or(Error::Overflow("polynomial"))
    }
    fn sub(self, o: i128) -> Result<Self> {
        self.0.checked_sub(o).map(Checked).ok_or(Error::Overflow("polynomial"))
    }
}

// (4*core - 1)(3 + 4t) - tail
fn shape(core: i128, t: i128, tail: i128) -> Result<i128> {
    let left = Checked(4).mul(core)?.sub(1)?.mul(3 + 4 * t)?;
    Ok(left.sub(tail)?.0)
}

/// Evaluates `id` at `args` (`(x, y, t)`, or `(x, y, t, z)` for R).
pub fn eval(id: PolyId, args: &[u64]) -> Result<i128> {
    if args.len() != id.arity() {
        return Err(domain(format!("{id} takes {} arguments, got {}", id.arity(), args.len())));
    }
    let (x, y, t) = (args[0] as i128, args[1] as i128, args[2] as i128);
    if x < 1 || y < 1 {
        return Err(domain("x, y and z must be >= 1"));
    }
    let x2 = Checked(x).mul(x)?.0;
    match id {
        PolyId::P => shape(Checked(x).mul(y)?.0, t, Checked(4).mul(x2)?.mul(y)?.0),
        PolyId::Q => shape(Checked(x).mul(y)?.0, t, Checked(4).mul(y)?.0),
        PolyId::R => {
            let z = args[3] as i128;
            if z < 1 {
                return Err(domain("x, y and z must be >= 1"));
            }
            shape(Checked(x).mul(y)?.mul(z)?.0, t, Checked(4).mul(x2)?.mul(y)?.0)
        }
        PolyId::S => shape(Checked(x).mul(y)?.0, t, Checked(4).mul(x2)?.0),
    }
}

/// Lexicographically first argument tuple (in `id`'s argument order) with
/// `id(args) == target`, or `None`.
///
/// Each polynomial is `4 * (positive product) - (3 + 4t)` once the others are
/// fixed, so one variable is solved by exact division and the rest range
/// over a finite box:
///
/// * every form is at least `3c - 4` with `c = 3 + 4t`, so `c <= (target+4)/3`;
/// * P: `4x(c - x)y - c`, so `x < c` and `y = (target + c)/(4x(c - x))`;
/// * Q: `4(xc - 1)y - c`, so `4(xc - 1) <= target + c`;
/// * R: `4x(zc - x)y - c`, so `zc > x` and `4x(zc - x) <= target + c`;
/// * S: `4x(yc - x) - c` with `yc > x`, so `4x <= target + c`.
pub fn preimage_search(target: u64, id: PolyId) -> Result<Option<Vec<u64>>> {
    if target % 4 != 1 || target < 5 {
        return Err(domain(format!("preimage target must be 1 mod 4 and >= 5, got {target}")));
    }
    let n = target as u128;
    let c_max = (n + 4) / 3;
    let cs = || (0u128..).map(|t| (t, 3 + 4 * t)).take_while(move |&(_, c)| c <= c_max);
    let out = |v: &[u128]| v.iter().map(|&a| a as u64).collect::<Vec<_>>();

    match id {
        PolyId::P => {
            for x in 1..c_max {
                let best = cs()
                    .filter(|&(_, c)| c > x && 4 * x * (c - x) <= n + c)
                    .filter_map(|(t, c)| {
                        let den = 4 * x * (c - x);
                        ((n + c) % den == 0).then(|| ((n + c) / den, t))
                    })
                    .min();
                if let Some((y, t)) = best {
                    return Ok(Some(out(&[x, y, t])));
                }
            }
        }
        PolyId::Q => {
            for x in 1..=(n + 7) / 12 {
                let best = cs()
                    .take_while(|&(_, c)| 4 * (x * c - 1) <= n + c)
                    .filter_map(|(t, c)| {
                        let den = 4 * (x * c - 1);
                        ((n + c) % den == 0).then(|| ((n + c) / den, t))
                    })
                    .min();
                if let Some((y, t)) = best {
                    return Ok(Some(out(&[x, y, t])));
                }
            }
        }
        PolyId::R => {
            for x in 1..=(n + c_max) / 4 {
                let mut best: Option<(u128, u128, u128)> = None;
                for (t, c) in cs() {
                    let z_lo = x / c + 1;
                    let z_hi = (x + (n + c) / (4 * x)) / c;
                    for z in z_lo..=z_hi {
                        let den = 4 * x * (z * c - x);
                        if den <= n + c && (n + c) % den == 0 {
                            let cand = ((n + c) / den, t, z);
                            if best.is_none_or(|b| cand < b) {
                                best = Some(cand);
                            }
                        }
                    }
                }
                if let Some((y, t, z)) = best {
                    return Ok(Some(out(&[x, y, t, z])));
                }
            }
        }
        PolyId::S => {
            for x in 1..=(n + c_max) / 4 {
                let best = cs()
                    .filter_map(|(t, c)| {
                        let num = n + c + 4 * x * x;
                        let den = 4 * x * c;
                        (num % den == 0 && (num / den) * c > x).then(|| (num / den, t))
                    })
                    .min();
                if let Some((y, t)) = best {
                    return Ok(Some(out(&[x, y, t])));
                }
            }
        }
    }
    Ok(None)
}

/// Two denominators `4s` apart, each with a constructed solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapPair {
    /// `S(1, s+1, t)`, solved through its Type C witness.
    pub n: u64,
    /// `P(1, s+1, t)`, solved through its Type B witness.
    pub n_prime: u64,
    pub triple: SolutionTriple,
    pub triple_prime: SolutionTriple,
}

pub fn gap_pair(s: u64, t: u64) -> Result<GapPair> {
    if s == 0 {
        return Err(domain("gap_pair needs s >= 1"));
    }
    let y = s.checked_add(1).ok_or(Error::Overflow("gap_pair"))?;
    let to_u64 = |v: i128| u64::try_from(v).map_err(|_| Error::Overflow("gap_pair"));
    let n = to_u64(eval(PolyId::S, &[1, y, t])?)?;
    let n_prime = to_u64(eval(PolyId::P, &[1, y, t])?)?;
    debug_assert_eq!(n - n_prime, 4 * s);

    // S(1, y, t): -n = 4 (mod 4y - 1), so d = 1, m = y.
    let m = y;
    let modulus = 4 * m - 1;
    let num = 1 + (n as u128) * (m as u128);
    let v = u64::try_from(num / modulus as u128).map_err(|_| Error::Overflow("gap_pair"))?;
    let triple = type_c::witness_to_triple(&TypeCWitness { n_val: n, d: 1, m, v })?;

    // P(1, y, t): n' = -1 (mod 4y - 1), so d = y, n = 1, u = (n' + 1)/(4y - 1).
    let u = (n_prime + 1) / modulus;
    let triple_prime = type_b::witness_to_triple(&TypeBWitness { a: n_prime, d: y, n: 1, u })?;
    Ok(GapPair { n, n_prime, triple, triple_prime })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        assert_eq!(eval(PolyId::P, &[1, 1, 0]).unwrap(), 5);
        assert_eq!(eval(PolyId::Q, &[2, 1, 0]).unwrap(), 17);
        assert_eq!(eval(PolyId::R, &[1, 1, 0, 2]).unwrap(), 17);
        assert_eq!(eval(PolyId::S, &[1, 2, 0]).unwrap(), 17);
        assert_eq!(eval(PolyId::P, &[3, 1, 0]).unwrap(), -3);
    }

    #[test]
    fn eval_errors() {
        assert!(matches!(eval(PolyId::R, &[1, 1, 0]), Err(Error::Domain(_))));
        assert!(matches!(eval(PolyId::P, &[0, 1, 0]), Err(Error::Domain(_))));
        assert!(matches!(eval(PolyId::R, &[1, 1, 0, 0]), Err(Error::Domain(_))));
        assert!(matches!(
            eval(PolyId::R, &[u64::MAX, u64::MAX, u64::MAX, u64::MAX]),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn preimage_examples() {
        assert_eq!(preimage_search(5, PolyId::P).unwrap(), Some(vec![1, 1, 0]));
        assert_eq!(preimage_search(193, PolyId::Q).unwrap(), None);
        assert_eq!(preimage_search(17, PolyId::R).unwrap(), Some(vec![1, 1, 0, 2]));
        assert!(matches!(preimage_search(7, PolyId::P), Err(Error::Domain(_))));
        assert!(matches!(preimage_search(1, PolyId::P), Err(Error::Domain(_))));
    }

    // Brute force over a box large enough to contain every preimage of the
    // targets checked.
    fn brute_min(id: PolyId, target: u64, lim: u64) -> Option<Vec<u64>> {
        let mut best: Option<Vec<u64>> = None;
        for x in 1..=lim {
            for y in 1..=lim {
                for t in 0..=lim / 4 {
                    let zs = if id == PolyId::R { 1..=lim } else { 1..=1 };
                    for z in zs {
                        let args: Vec<u64> =
                            if id == PolyId::R { vec![x, y, t, z] } else { vec![x, y, t] };
                        if eval(id, &args).unwrap() == target as i128
                            && best.as_ref().is_none_or(|b| &args < b)
                        {
                            best = Some(args);
                        }
                    }
                }
            }
        }
        best
    }

    #[test]
    fn preimage_matches_brute_force() {
        for target in (5..=121).step_by(4) {
            for id in PolyId::ALL {
                let lim = if id == PolyId::R { 40 } else { 130 };
                assert_eq!(
                    preimage_search(target, id).unwrap(),
                    brute_min(id, target, lim),
                    "{id}({target})"
                );
            }
        }
    }

    #[test]
    fn gap_pair_examples() {
        let g = gap_pair(1, 0).unwrap();
        assert_eq!((g.n, g.n_prime), (17, 13));
        let g = gap_pair(2, 0).unwrap();
        assert_eq!((g.n, g.n_prime), (29, 21));
        assert_eq!(g.n - g.n_prime, 8);
        assert!(matches!(gap_pair(0, 0), Err(Error::Domain(_))));
    }
}

//! Order-2 Egyptian decompositions and the consecutive-chain construction.
//!
//! If `(4d - 1)/(k + d) = 1/y + 1/z` then, with `x = k + d` and `n = 4k + 1`,
//! `4/n = 1/x + 1/(ny) + 1/(nz)`. A fraction `a/b` is a sum of two unit
//! fractions exactly when some divisors `u, v` of `b` have `a | u + v`.
//!
//! Taking `k = N! - f` and `d = f` for `f <= N/2`, the pair `u = 2f`,
//! `v = 2f - 1` divides `N!` and sums to `4f - 1`, which solves every
//! `4k + 1` with `k` in `[N! - N/2, N! - 1]`. Even and `3 mod 4` denominators in
//! between are filled by fixed identities, giving a gap-free run.

use serde::{Deserialize, Serialize};

use crate::arith::{checked_add, checked_mul, divisors};
use crate::error::{Error, Result};
use crate::polyform::{preimage_search, PolyId};
use crate::triple::SolutionTriple;

/// `a/b = 1/y + 1/z` built from divisors `u, v` of `b` with `a | u + v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Order2Decomposition {
    pub a: u64,
    pub b: u64,
    pub y: u64,
    pub z: u64,
    pub u: u64,
    pub v: u64,
}

fn decompose(a: u64, b: u64, u: u64, v: u64) -> Option<Order2Decomposition> {
    let q = (u + v) / a;
    let y = (b / u).checked_mul(q)?;
    let z = (b / v).checked_mul(q)?;
    Some(Order2Decomposition { a, b, y, z, u, v })
}

/// First divisor pair `(u, v)` of `b`, `u <= v`, ascending in `u` then `v`,
/// with `a | u + v`. Equal parts are allowed.
pub fn egyptian2(a: u64, b: u64) -> Option<Order2Decomposition> {
    if a == 0 || b == 0 || a > 2 * b {
        return None;
    }
    let divs = divisors(b);
    for (i, &u) in divs.iter().enumerate() {
        for &v in &divs[i..] {
            if (u + v) % a == 0 {
                return decompose(a, b, u, v);
            }
        }
    }
    None
}

/// Lifts `(4d - 1)/(k + d) = 1/y + 1/z` to the sorted solution
/// `(k + d, ny, nz)` of `n = 4k + 1`.
pub fn lift_to_es(k: u64, d: u64) -> Result<Option<SolutionTriple>> {
    if k == 0 || d == 0 {
        return Ok(None);
    }
    let n = checked_add(checked_mul(4, k, "lift")?, 1, "lift")?;
    let x = checked_add(k, d, "lift")?;
    let a = checked_mul(4, d, "lift")? - 1;
    match egyptian2(a, x) {
        Some(e) => lift_decomposition(n, x, &e).map(Some),
        None => Ok(None),
    }
}

fn lift_decomposition(n: u64, x: u64, e: &Order2Decomposition) -> Result<SolutionTriple> {
    SolutionTriple::new(n, [x, checked_mul(n, e.y, "lift")?, checked_mul(n, e.z, "lift")?])
}

/// Whether some `d <= k + 1` admits divisors `u, v` of `k + d` with
/// `uv | k + d` and `4d - 1 | u + v`; for `n = 4k + 1` this is being a value
/// of the R polynomial, i.e. having a Type II solution.
///
/// The product condition is stronger than `(4d - 1)/(k + d)` being a sum of
/// two unit fractions: `15/10 = 1/2 + 1/1` lifts to `(10, 25, 50)` for
/// `n = 25`, a solution that is not Type II.
pub fn order2_type_ii_check(k: u64) -> Result<bool> {
    if k == 0 {
        return Err(crate::error::domain("order2_type_ii_check needs k >= 1"));
    }
    for d in 1..=k + 1 {
        let x = checked_add(k, d, "order-2 reduction")?;
        let a = 4 * d - 1;
        let divs = divisors(x);
        for (i, &u) in divs.iter().enumerate() {
            for &v in &divs[i..] {
                if x % u == 0 && (x / u) % v == 0 && (u + v) % a == 0 {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Largest chain parameter whose factorial fits in `u64`.
pub const FACTORIAL_CAP: u64 = 20;

/// `(m/2, m, m)` for even `m`, `((m+1)/4, m(m+1)/2, m(m+1)/2)` for
/// `m = 3 (mod 4)`; `None` for `m = 1 (mod 4)`.
pub fn filler_triple(m: u64) -> Result<Option<SolutionTriple>> {
    if m < 2 {
        return Ok(None);
    }
    let coords = match m % 4 {
        0 | 2 => [m / 2, m, m],
        3 => {
            let half = checked_mul(m, m.div_ceil(2), "filler")?;
            [(m + 1) / 4, half, half]
        }
        _ => return Ok(None),
    };
    SolutionTriple::new(m, coords).map(Some)
}

/// `4/m = 1/m + 1/((m+1)/3) + 1/(m(m+1)/3)` for `m = 2 (mod 3)`.
pub fn intro_identity(m: u64) -> Result<Option<SolutionTriple>> {
    if m % 3 != 2 {
        return Ok(None);
    }
    let third = (m + 1) / 3;
    SolutionTriple::new(m, [m, third, checked_mul(m, third, "intro identity")?]).map(Some)
}

/// A run of `4 * floor(n/2)` consecutive denominators ending at `4 * n!`,
/// each paired with a verified solution.
pub fn chain(n: u64) -> Result<Vec<(u64, SolutionTriple)>> {
    if n > FACTORIAL_CAP {
        return Err(Error::Resource(format!("chain({n}) exceeds the factorial cap {FACTORIAL_CAP}")));
    }
    if n < 2 {
        return Err(crate::error::domain(format!("chain needs n >= 2, got {n}")));
    }
    let fact: u64 = (1..=n).product();
    let half = n / 2;
    let first = checked_add(checked_mul(4, fact - half, "chain")?, 1, "chain")?;
    let last = checked_mul(4, fact, "chain")?;
    let mut out = Vec::with_capacity((last - first + 1) as usize);
    for m in first..=last {
        let triple = if m % 4 == 1 {
            let k = (m - 1) / 4;
            let f = fact - k;
            let (u, v) = (2 * f, 2 * f - 1);
            let e = decompose(4 * f - 1, fact, u, v).ok_or(Error::Overflow("chain"))?;
            lift_decomposition(m, fact, &e)?
        } else {
            filler_triple(m)?.ok_or_else(|| Error::Internal(format!("no filler for {m}")))?
        };
        out.push((m, triple));
    }
    Ok(out)
}

/// Type II membership through the R polynomial, for cross-checking
/// [`order2_type_ii_check`].
pub fn r_member(k: u64) -> Result<bool> {
    Ok(preimage_search(4 * k + 1, PolyId::R)?.is_some())
}

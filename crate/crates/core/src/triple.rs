//! Solution triples of `4/n = 1/x + 1/y + 1/z`, their exact verification, the
//! brute-force enumeration oracle, gcd-pattern classification and the
//! structural matchers for Type A, B and C shapes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_perfect_square};
use crate::error::{domain, Error, Result};

/// A verified solution with `x <= y <= z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SolutionTriple {
    pub n: u64,
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl SolutionTriple {
    /// Sorts the coordinates and checks the equation.
    pub fn new(n: u64, coords: [u64; 3]) -> Result<Self> {
        let mut c = coords;
        c.sort_unstable();
        if !verify(n, c[0], c[1], c[2])? {
            return Err(Error::Internal(format!(
                "({}, {}, {}) does not solve 4/{n}",
                c[0], c[1], c[2]
            )));
        }
        Ok(Self { n, x: c[0], y: c[1], z: c[2] })
    }

    pub fn coords(&self) -> [u64; 3] {
        [self.x, self.y, self.z]
    }
}

impl fmt::Display for SolutionTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "4/{} = 1/{} + 1/{} + 1/{}", self.n, self.x, self.y, self.z)
    }
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// `4/n = 1/x + 1/y + 1/z` exactly, i.e. `4xyz = n(xy + xz + yz)`.
///
/// Evaluated as `4/n - 1/x - 1/y` in lowest terms and compared with `1/z`,
/// so intermediates stay far below the raw cross-multiplied products.
/// Overflow is an error, never `false`.
pub fn verify(n: u64, x: u64, y: u64, z: u64) -> Result<bool> {
    if n == 0 || x == 0 || y == 0 || z == 0 {
        return Err(domain("verify needs positive arguments"));
    }
    let overflow = || Error::Overflow("verify");
    let (n, x, y) = (n as u128, x as u128, y as u128);
    // 4/n - 1/x = (4x - n) / (nx)
    if 4 * x <= n {
        return Ok(false);
    }
    let (mut num, mut den) = (4 * x - n, n * x);
    let g = gcd128(num, den);
    num /= g;
    den /= g;
    // num/den - 1/y over the common denominator lcm(den, y)
    let g = gcd128(den, y);
    let scaled = num.checked_mul(y / g).ok_or_else(overflow)?;
    let sub = den / g;
    if scaled <= sub {
        return Ok(false);
    }
    let num = scaled - sub;
    let den = den.checked_mul(y / g).ok_or_else(overflow)?;
    let g = gcd128(num, den);
    Ok(num / g == 1 && den / g == z as u128)
}

/// Every solution for `n >= 2`, sorted lexicographically.
///
/// `x` runs over `n/4 < x <= 3n/4`. With `r = 4/n - 1/x = p/q` the middle
/// coordinate satisfies `max(x, ceil(q/p)) <= y <= floor(2q/p)`, and `z` is
/// accepted when `1/(r - 1/y)` is an integer `>= y`.
pub fn enumerate_all(n: u64) -> Result<Vec<SolutionTriple>> {
    if n < 2 {
        return Err(domain(format!("enumerate_all needs n >= 2, got {n}")));
    }
    let mut out = Vec::new();
    let nn = n as u128;
    for x in (n / 4 + 1)..=(3 * n / 4) {
        let xx = x as u128;
        // r = (4x - n) / (n x)
        let p = 4 * xx - nn;
        let q = nn * xx;
        let y_lo = (x as u128).max(q.div_ceil(p));
        let y_hi = 2 * q / p;
        for y in y_lo..=y_hi {
            // r - 1/y = (p y - q) / (q y)
            let num = p * y - q;
            if num == 0 {
                continue;
            }
            let den = q * y;
            if den % num == 0 {
                let z = den / num;
                if z >= y {
                    out.push(SolutionTriple { n, x, y: y as u64, z: z as u64 });
                }
            }
        }
    }
    Ok(out)
}

/// Gcd pattern of a triple relative to its denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GcdClass {
    TypeI,
    TypeII,
    Other,
}

impl fmt::Display for GcdClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GcdClass::TypeI => "Type I",
            GcdClass::TypeII => "Type II",
            GcdClass::Other => "other",
        })
    }
}

/// Classifies up to permutation of the coordinates: Type I when exactly the
/// pattern (coprime, coprime, multiple of n) occurs, Type II for (coprime,
/// multiple, multiple).
pub fn gcd_class(t: &SolutionTriple) -> GcdClass {
    let n = t.n;
    let coprime = t.coords().iter().filter(|&&c| gcd(n, c) == 1).count();
    let multiple = t.coords().iter().filter(|&&c| c % n == 0).count();
    // for n == 1 every coordinate is both, and neither pattern can be told apart
    if n == 1 {
        return GcdClass::Other;
    }
    match (coprime, multiple) {
        (2, 1) => GcdClass::TypeI,
        (1, 2) => GcdClass::TypeII,
        _ => GcdClass::Other,
    }
}

/// Parameters of every structural shape a triple carries.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureMatch {
    /// `(d, u, v)` with triple `{du, dv, duv}`.
    pub type_a: Option<(u64, u64, u64)>,
    /// `(d, u, v)` with triple `{duv, dun, dvn}`.
    pub type_b: Option<(u64, u64, u64)>,
    /// `(u, v, w)` with triple `{uv, uwn, vwn}`.
    pub type_c: Option<(u64, u64, u64)>,
}

impl StructureMatch {
    pub fn is_empty(&self) -> bool {
        self.type_a.is_none() && self.type_b.is_none() && self.type_c.is_none()
    }
}

// (X, Y, Z) role assignments; Y and Z are interchangeable but produce
// mirrored parameters, so both orders are tried.
const ASSIGNMENTS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

fn keep_min(slot: &mut Option<(u64, u64, u64)>, cand: (u64, u64, u64)) {
    if slot.is_none_or(|cur| cand < cur) {
        *slot = Some(cand);
    }
}

fn div_exact(a: u128, b: u128) -> Option<u128> {
    (b != 0 && a % b == 0).then(|| a / b)
}

fn fits(v: u128) -> Option<u64> {
    u64::try_from(v).ok().filter(|&v| v > 0)
}

/// Detects Type A, B and C shapes over every coordinate assignment; among
/// several parameterizations the lexicographically smallest tuple wins.
pub fn match_structure(t: &SolutionTriple) -> StructureMatch {
    let c = t.coords().map(|v| v as u128);
    let n = t.n as u128;
    let mut m = StructureMatch::default();
    for [ix, iy, iz] in ASSIGNMENTS {
        let (x, y, z) = (c[ix], c[iy], c[iz]);

        // Type A: z = duv with x = du, y = dv  =>  d = xy / z.
        if let Some(d) = x.checked_mul(y).and_then(|xy| div_exact(xy, z)) {
            if let (Some(u), Some(v)) = (div_exact(x, d), div_exact(y, d)) {
                if let (Some(d), Some(u), Some(v)) = (fits(d), fits(u), fits(v)) {
                    keep_min(&mut m.type_a, (d, u, v));
                }
            }
        }

        if y % n != 0 || z % n != 0 {
            continue;
        }
        let (yn, zn) = (y / n, z / n);

        // Type B: x = duv, y = dun, z = dvn  =>  d = (y/n)(z/n) / x.
        if let Some(d) = yn.checked_mul(zn).and_then(|p| div_exact(p, x)) {
            if let (Some(u), Some(v)) = (div_exact(yn, d), div_exact(zn, d)) {
                if d.checked_mul(u).and_then(|du| du.checked_mul(v)) == Some(x) {
                    if let (Some(d), Some(u), Some(v)) = (fits(d), fits(u), fits(v)) {
                        keep_min(&mut m.type_b, (d, u, v));
                    }
                }
            }
        }

        // Type C: x = uv, y = uwn, z = vwn  =>  w^2 = yz / (x n^2).
        if let Some(w2) = yn.checked_mul(zn).and_then(|p| div_exact(p, x)) {
            if let Some(w) = u64::try_from(w2).ok().and_then(is_perfect_square) {
                let w = w as u128;
                if let (Some(u), Some(v)) = (div_exact(yn, w), div_exact(zn, w)) {
                    if u.checked_mul(v) == Some(x) {
                        if let (Some(u), Some(v), Some(w)) = (fits(u), fits(v), fits(w)) {
                            keep_min(&mut m.type_c, (u, v, w));
                        }
                    }
                }
            }
        }
    }
    m
}

/// The sextuple projection `(abd, acdn, bcdn)`. The result is not
/// guaranteed to solve anything; verify it separately.
pub fn project_sextuple(a: u64, b: u64, c: u64, d: u64, n: u64) -> Result<(u64, u64, u64)> {
    if [a, b, c, d, n].contains(&0) {
        return Err(domain("projection arguments must be positive"));
    }
    let m = |x: u64, y: u64| x.checked_mul(y).ok_or(Error::Overflow("project_sextuple"));
    let abd = m(m(a, b)?, d)?;
    let cdn = m(m(c, d)?, n)?;
    Ok((abd, m(a, cdn)?, m(b, cdn)?))
}

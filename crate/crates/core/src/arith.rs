//! Integer primitives shared by every search: deterministic primality, a
//! smallest-prime-factor sieve, factorization, divisor enumeration, the
//! Jacobi symbol, perfect-square detection and prime ranges.

use crate::error::{domain, Error, Result};

/// Default sieve limit (2^22).
pub const DEFAULT_SIEVE_LIMIT: u64 = 1 << 22;

/// Largest sieve the library will try to allocate (2^32 entries of u32).
pub const MAX_SIEVE_LIMIT: u64 = 1 << 32;

/// Largest window `primes_in` will sieve in one call.
const MAX_PRIME_WINDOW: u64 = 1 << 32;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn checked_mul(a: u64, b: u64, ctx: &'static str) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow(ctx))
}

pub(crate) fn checked_add(a: u64, b: u64, ctx: &'static str) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow(ctx))
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// The first twelve primes form a strong-pseudoprime witness set that is
// exact for every n < 3.3 * 10^24, which covers all of u64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest-prime-factor table built with a linear sieve.
///
/// Immutable once built; share it by reference across workers.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    limit: u64,
    spf: Vec<u32>,
    primes: Vec<u32>,
}

impl SpfSieve {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(domain(format!("sieve limit must be >= 2, got {limit}")));
        }
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::Resource(format!(
                "sieve limit {limit} exceeds the maximum {MAX_SIEVE_LIMIT}"
            )));
        }
        let len = limit as usize + 1;
        let mut spf: Vec<u32> = Vec::new();
        spf.try_reserve_exact(len)
            .map_err(|e| Error::Resource(format!("cannot allocate sieve of {len} entries: {e}")))?;
        spf.resize(len, 0);
        let mut primes: Vec<u32> = Vec::new();
        for i in 2..len {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                let j = p as usize * i;
                if p > si || j >= len {
                    break;
                }
                spf[j] = p;
            }
        }
        Ok(Self { limit, spf, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `i`, for `2 <= i <= limit`.
    pub fn spf(&self, i: u64) -> Option<u64> {
        if i < 2 || i > self.limit {
            None
        } else {
            Some(self.spf[i as usize] as u64)
        }
    }

    /// All primes up to the sieve limit, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().map(|&p| p as u64)
    }
}

/// Prime-power decomposition of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: u64,
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    /// All divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.divisor_count() as usize);
        out.push(1u64);
        for &(p, e) in &self.factors {
            let prev = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..prev {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

fn push_factor(factors: &mut Vec<(u64, u32)>, p: u64) {
    match factors.last_mut() {
        Some((q, e)) if *q == p => *e += 1,
        _ => factors.push((p, 1)),
    }
}

/// Factor `n >= 2`. Uses the sieve when `n` lies within it, trial division
/// (cut short by the primality test) otherwise.
pub fn factorize(n: u64, sieve: Option<&SpfSieve>) -> Result<Factorization> {
    if n < 2 {
        return Err(domain(format!("cannot factorize {n}")));
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut next_candidate = 2;
    if let Some(s) = sieve {
        for p in s.primes() {
            if m <= s.limit || p * p > m {
                break;
            }
            if m % p == 0 {
                while m % p == 0 {
                    push_factor(&mut factors, p);
                    m /= p;
                }
                if m > s.limit && is_prime(m) {
                    break;
                }
            }
            next_candidate = p + 1;
        }
        if m <= s.limit {
            while m > 1 {
                let p = s.spf[m as usize] as u64;
                push_factor(&mut factors, p);
                m /= p;
            }
            return Ok(Factorization { value: n, factors });
        }
    }
    trial_divide(&mut factors, &mut m, next_candidate);
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { value: n, factors })
}

// Trial division by 2, 3 and every 6k +- 1 that is >= `start`, stopping once
// the cofactor is 1 or prime.
fn trial_divide(factors: &mut Vec<(u64, u32)>, m: &mut u64, start: u64) {
    for p in [2u64, 3] {
        if p >= start {
            while *m % p == 0 {
                push_factor(factors, p);
                *m /= p;
            }
        }
    }
    let mut k = (start / 6).max(1);
    let mut fresh = true;
    loop {
        for p in [6 * k - 1, 6 * k + 1] {
            if p < start || *m % p != 0 {
                continue;
            }
            while *m % p == 0 {
                push_factor(factors, p);
                *m /= p;
            }
            fresh = true;
        }
        let next = 6 * (k + 1) - 1;
        if *m == 1 || next.saturating_mul(next) > *m {
            return;
        }
        if fresh {
            if is_prime(*m) {
                return;
            }
            fresh = false;
        }
        k += 1;
    }
}

/// Divisors of `n` in ascending order; `divisors(1) == [1]`.
pub fn divisors(n: u64) -> Vec<u64> {
    divisors_with(n, None)
}

pub fn divisors_with(n: u64, sieve: Option<&SpfSieve>) -> Vec<u64> {
    match n {
        0 => Vec::new(),
        1 => vec![1],
        _ => factorize(n, sieve).expect("n >= 2").divisors(),
    }
}

/// Jacobi symbol `(a/m)` for odd `m >= 1`; `a` may be negative.
pub fn jacobi(a: i64, m: u64) -> Result<i8> {
    if m == 0 || m % 2 == 0 {
        return Err(domain(format!("Jacobi modulus must be odd and positive, got {m}")));
    }
    let mut a = (a as i128).rem_euclid(m as i128) as u64;
    let mut m = m;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(m % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        a %= m;
    }
    Ok(if m == 1 { sign } else { 0 })
}

/// Integer square root when `n` is a perfect square.
pub fn is_perfect_square(n: u64) -> Option<u64> {
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Every prime in `[lo, hi]`, ascending (segmented sieve).
pub fn primes_in(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo > hi {
        return Err(domain(format!("empty prime range [{lo}, {hi}]")));
    }
    let lo = lo.max(2);
    if lo > hi {
        return Ok(Vec::new());
    }
    if hi - lo >= MAX_PRIME_WINDOW {
        return Err(Error::Resource(format!("prime window [{lo}, {hi}] too wide")));
    }
    let root = hi.isqrt();
    let base = SpfSieve::new(root.max(2))?;
    let width = (hi - lo + 1) as usize;
    let mut composite = vec![false; width];
    for p in base.primes() {
        let start = (p * p).max(lo.div_ceil(p) * p);
        let mut j = start;
        while j <= hi {
            composite[(j - lo) as usize] = true;
            match j.checked_add(p) {
                Some(next) => j = next,
                None => break,
            }
        }
    }
    Ok(composite
        .iter()
        .enumerate()
        .filter(|(_, &c)| !c)
        .map(|(i, _)| lo + i as u64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn primality_small_and_named() {
        assert!(is_prime(2));
        assert!(is_prime(2521));
        assert!(is_prime(193));
        assert!(!is_prime(25));
        assert!(!is_prime(1));
        for n in 0..20_000 {
            assert_eq!(is_prime(n), naive_prime(n), "n = {n}");
        }
    }

    #[test]
    fn primality_large() {
        assert!(is_prime(18_446_744_073_709_551_557)); // largest u64 prime
        assert!(!is_prime(u64::MAX));
        // strong pseudoprime to bases 2..=37 would need > 3.3e24; check known base-2 psp
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn sieve_values() {
        let s = SpfSieve::new(10).unwrap();
        assert_eq!(s.spf(9), Some(3));
        assert_eq!(s.spf(7), Some(7));
        assert_eq!(s.spf(11), None);
        let s = SpfSieve::new(50).unwrap();
        assert_eq!(s.spf(49), Some(7));
        assert!(matches!(SpfSieve::new(1), Err(Error::Domain(_))));
        assert!(matches!(SpfSieve::new(MAX_SIEVE_LIMIT + 1), Err(Error::Resource(_))));
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12, None).unwrap().factors, vec![(2, 2), (3, 1)]);
        assert_eq!(87 * 1275, 110_925);
        assert_eq!(
            factorize(110_925, None).unwrap().factors,
            vec![(3, 2), (5, 2), (17, 1), (29, 1)]
        );
        assert_eq!(factorize(773, None).unwrap().factors, vec![(773, 1)]);
        assert!(matches!(factorize(1, None), Err(Error::Domain(_))));
    }

    #[test]
    fn factorize_beyond_sieve() {
        let s = SpfSieve::new(100).unwrap();
        for n in [10_007u64 * 10_009, 2 * 101 * 103, 1_000_003, 4 * 1_000_003 * 1_000_033, 7u64.pow(20)] {
            let with = factorize(n, Some(&s)).unwrap();
            let without = factorize(n, None).unwrap();
            assert_eq!(with, without, "n = {n}");
            let prod: u64 = with.factors.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(50), vec![1, 2, 5, 10, 25, 50]);
    }

    #[test]
    fn jacobi_examples() {
        for m in (1..200).step_by(2) {
            assert_eq!(jacobi(1, m).unwrap(), 1);
        }
        assert_eq!(jacobi(-1, 3).unwrap(), -1);
        assert_eq!(jacobi(-2, 7).unwrap(), -1);
        assert_eq!(jacobi(3, 9).unwrap(), 0);
        assert!(matches!(jacobi(1, 8), Err(Error::Domain(_))));
        assert!(matches!(jacobi(1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(is_perfect_square(0), Some(0));
        assert_eq!(is_perfect_square(25), Some(5));
        assert_eq!(is_perfect_square(24), None);
        assert_eq!(is_perfect_square(u32::MAX as u64 * u32::MAX as u64), Some(u32::MAX as u64));
    }

    #[test]
    fn prime_ranges() {
        assert_eq!(primes_in(2, 10).unwrap(), vec![2, 3, 5, 7]);
        assert!(primes_in(104_720, 104_740).unwrap().contains(&104_729));
        assert!(primes_in(24, 28).unwrap().is_empty());
        assert!(matches!(primes_in(10, 2), Err(Error::Domain(_))));
        assert_eq!(primes_in(2, 104_729).unwrap().len(), 10_000);
    }
}

//! Divisor combinatorics, primality and small-integer factorization.
//!
//! Degrees and divisors of degrees are `u64` (the matrix layer caps m at
//! 512); discriminants and matrix entries are arbitrary-precision.

use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default bound on |n| for `factor_small`. The worked examples exceed this
/// on purpose: big discriminants travel in factored form.
pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000_000_000;

/// All positive divisors of `m`, ascending. `m >= 1`.
pub fn divisors(m: u64) -> Vec<u64> {
    assert!(m >= 1, "divisors: m must be positive");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Largest k with p^k | n. Rejects n = 0.
pub fn valuation(p: &BigUint, n: &BigInt) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::InvalidArgument(
            "valuation of 0 is undefined".into(),
        ));
    }
    let p = BigInt::from(p.clone());
    let mut rest = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return Ok(k);
        }
        rest = q;
        k += 1;
    }
}

/// lcm over a nonempty list (entries may include literal 1s).
pub fn lcm_tuple(v: &[u64]) -> Result<u64> {
    if v.is_empty() {
        return Err(Error::InvalidArgument("lcm of empty list".into()));
    }
    Ok(v.iter().fold(1u64, |acc, &x| acc.lcm(&x)))
}

/// gcd over a nonempty list.
pub fn gcd_tuple(v: &[u64]) -> Result<u64> {
    if v.is_empty() {
        return Err(Error::InvalidArgument("gcd of empty list".into()));
    }
    Ok(v.iter().fold(0u64, |acc, &x| acc.gcd(&x)))
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1u64;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, n);
        }
        a = mulmod(a, a, n);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for u64 (the 12-base set covers all of u64).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// First 40 primes, used as fixed Miller-Rabin bases above 64 bits.
const BIG_BASES: [u64; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

/// Primality: deterministic for inputs fitting u64, 40-round Miller-Rabin
/// with fixed bases above (reproducible runs, error probability < 4^-40).
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &BIG_BASES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Complete factorization of n by trial division, as (prime, exponent) pairs
/// with primes ascending, plus the sign. Refuses |n| above `bound` and
/// surfaces any composite cofactor it cannot finish.
pub fn factor_small(n: &BigInt, bound: &BigUint) -> Result<(i8, Vec<(BigUint, u32)>)> {
    if n.is_zero() {
        return Err(Error::InvalidDiscriminant("discriminant must be nonzero".into()));
    }
    let mag = n.magnitude().clone();
    if &mag > bound {
        return Err(Error::FactorBoundExceeded {
            bound: bound.clone(),
        });
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = mag.to_u64().ok_or(Error::FactorBoundExceeded {
        bound: bound.clone(),
    })?;
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0u32;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((BigUint::from(p), e));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut p = 5u64;
    // 6k +- 1 wheel; trial divisors capped at 10^6, enough for |n| <= 10^12.
    while p <= 1_000_000 && p * p <= rest {
        push(p, &mut rest);
        push(p + 2, &mut rest);
        p += 6;
    }
    if rest > 1 {
        if is_prime_u64(rest) {
            factors.push((BigUint::from(rest), 1));
        } else {
            return Err(Error::IncompleteFactorization {
                cofactor: BigUint::from(rest),
            });
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok((sign, factors))
}

/// Floor of the positive n-th root, with an exactness flag.
pub fn nth_root_exact(x: &BigUint, n: u32) -> Option<BigUint> {
    let r = x.nth_root(n);
    if r.pow(n) == *x {
        Some(r)
    } else {
        None
    }
}

//! Small number-theoretic helpers over `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    a.lcm(b)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_prime(n: &BigInt) -> bool {
    n.to_u64().is_some_and(is_prime_u64)
}

/// Prime factorization `(p, e)` with primes ascending. Inputs must be
/// positive and fit in 64 bits.
pub fn factorize(n: &BigInt) -> Result<Vec<(u64, u32)>> {
    let Some(mut m) = n.to_u64().filter(|&m| m >= 1) else {
        return Err(Error::TooLarge(n.to_string()));
    };
    let mut out = Vec::new();
    let mut p = 2u64;
    while (p as u128) * (p as u128) <= m as u128 {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        if p % 4096 == 1 && is_prime_u64(m) {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(out)
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    if n.is_zero() {
        return u32::MAX;
    }
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

pub fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Exact `log_p(n)` when `n` is a power of `p`.
pub fn log_exact(n: &BigInt, p: u64) -> Option<u32> {
    let mut n = n.clone();
    let p = BigInt::from(p);
    let mut k = 0;
    while !n.is_one() {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() || q.is_zero() {
            return None;
        }
        n = q;
        k += 1;
    }
    Some(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime_u64(2) && is_prime_u64(97) && !is_prime_u64(91));
        assert!(is_prime_u64(1_000_000_007));
        assert_eq!(factorize(&big(360)).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(&big(1)).unwrap(), vec![]);
        assert_eq!(divisors(&big(12)).unwrap(), [1, 2, 3, 4, 6, 12].map(big));
        assert_eq!(valuation(&big(48), 2), 4);
        assert_eq!(log_exact(&big(27), 3), Some(3));
        assert_eq!(log_exact(&big(12), 2), None);
    }
}

//! Small-integer arithmetic helpers: primality, factorization, squarefree
//! parts, fundamental discriminants.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::CoreError;

/// Deterministic Miller-Rabin for u64 (the standard 12-witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Factor a u64 into (prime, exponent) pairs, ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for p in [2u64, 3, 5] {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    let mut d = 7u64;
    // wheel over 7, 11, 13, ... skipping multiples of 2, 3, 5
    let inc = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut i = 0;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += inc[i];
        i = (i + 1) % 8;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Factor the absolute value of a BigInt. Fails only if |n| exceeds u128
/// after stripping factors below 10^6 and the cofactor is composite.
pub fn factor_bigint(n: &BigInt) -> Result<Vec<(u64, u32)>, CoreError> {
    let mut n = n.abs();
    if n.is_zero() {
        return Err(CoreError::FactorizationFailed("0".into()));
    }
    if let Some(u) = n.to_u64() {
        return Ok(factor_u64(u));
    }
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p < 1_000_000 {
        if (&n % p).is_zero() {
            let mut e = 0;
            while (&n % p).is_zero() {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p = if p == 2 { 3 } else { p + 2 };
        if let Some(u) = n.to_u64() {
            let mut rest = factor_u64(u);
            merge_factors(&mut out, &mut rest);
            return Ok(out);
        }
    }
    Err(CoreError::FactorizationFailed(n.to_string()))
}

fn merge_factors(out: &mut Vec<(u64, u32)>, rest: &mut Vec<(u64, u32)>) {
    for (p, e) in rest.drain(..) {
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += e;
        } else {
            out.push((p, e));
        }
    }
    out.sort_unstable();
}

/// Primes dividing |n|, ascending.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<u64>, CoreError> {
    Ok(factor_bigint(n)?.into_iter().map(|(p, _)| p).collect())
}

/// Squarefree part of |n| (product of primes with odd exponent).
pub fn squarefree_part(n: &BigInt) -> Result<u64, CoreError> {
    let mut s = 1u64;
    for (p, e) in factor_bigint(n)? {
        if e % 2 == 1 {
            s = s.saturating_mul(p);
        }
    }
    Ok(s)
}

/// Fundamental discriminant of Q(sqrt(m)) for squarefree m > 1: m if
/// m = 1 mod 4, else 4m. Returns 1 for m = 1.
pub fn fundamental_disc_of_squarefree(m: u64) -> i64 {
    if m <= 1 {
        return 1;
    }
    if m % 4 == 1 {
        m as i64
    } else {
        4 * m as i64
    }
}

/// All divisors of n, unsorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_u64(n) {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime_u64(2_147_483_647)); // 2^31 - 1
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }

    #[test]
    fn factor_roundtrip() {
        for n in [1u64, 2, 12, 97, 1024, 512000, 1025, 850176, 59006976] {
            let f = factor_u64(n);
            let back: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
            assert_eq!(back.max(1), n.max(1));
        }
        assert_eq!(factor_u64(1025), vec![(5, 2), (41, 1)]);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&BigInt::from(49)).unwrap(), 1);
        assert_eq!(squarefree_part(&BigInt::from(1025)).unwrap(), 41);
        assert_eq!(squarefree_part(&BigInt::from(48)).unwrap(), 3);
        assert_eq!(squarefree_part(&BigInt::from(14896)).unwrap(), 19);
    }

    #[test]
    fn fundamental_discs() {
        assert_eq!(fundamental_disc_of_squarefree(5), 5);
        assert_eq!(fundamental_disc_of_squarefree(41), 41);
        assert_eq!(fundamental_disc_of_squarefree(3), 12);
        assert_eq!(fundamental_disc_of_squarefree(15), 60);
        assert_eq!(fundamental_disc_of_squarefree(7), 28);
        assert_eq!(fundamental_disc_of_squarefree(43), 172);
    }
}

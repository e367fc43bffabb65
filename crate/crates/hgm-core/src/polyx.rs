//! Dense polynomial helpers over BigInt / BigRational, plus cyclotomic
//! polynomials. Coefficients are stored constant-term first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn zp_trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

pub fn zp_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![BigInt::zero()];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    zp_trim(&mut out);
    out
}

/// Exact division a / b; panics if the division is not exact.
pub fn zp_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    zp_try_div_exact(a, b).expect("polynomial division not exact")
}

/// Exact division over the integers, None if not exact.
pub fn zp_try_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut rem: Vec<BigInt> = a.to_vec();
    zp_trim(&mut rem);
    let mut bb = b.to_vec();
    zp_trim(&mut bb);
    let db = bb.len() - 1;
    let lead = bb.last().unwrap().clone();
    if rem.len() < bb.len() {
        return if rem.iter().all(|c| c.is_zero()) {
            Some(vec![BigInt::zero()])
        } else {
            None
        };
    }
    let dq = rem.len() - bb.len();
    let mut q = vec![BigInt::zero(); dq + 1];
    for k in (0..=dq).rev() {
        let c = rem[k + db].clone();
        if (&c % &lead) != BigInt::zero() {
            return None;
        }
        let qk = c / &lead;
        for i in 0..=db {
            let t = &qk * &bb[i];
            rem[k + i] -= t;
        }
        q[k] = qk;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    zp_trim(&mut q);
    Some(q)
}

/// x^n - 1.
pub fn zp_xn_minus_1(n: u64) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n as usize + 1];
    v[0] = BigInt::from(-1);
    v[n as usize] = BigInt::one();
    v
}

/// The n-th cyclotomic polynomial, by recursive exact division.
pub fn cyclotomic(n: u64) -> Vec<BigInt> {
    let mut num = zp_xn_minus_1(n);
    for d in crate::arith::divisors(n) {
        if d < n {
            num = zp_div_exact(&num, &cyclotomic(d));
        }
    }
    num
}

pub fn zp_eval_rational(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from(c.clone());
    }
    acc
}

/// q-polynomial product over rationals.
pub fn qp_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), zp(&[-1, 1]));
        assert_eq!(cyclotomic(2), zp(&[1, 1]));
        assert_eq!(cyclotomic(4), zp(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), zp(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), zp(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn div_exact_detects_inexact() {
        let a = zp(&[1, 2, 1]);
        assert_eq!(zp_try_div_exact(&a, &zp(&[1, 1])), Some(zp(&[1, 1])));
        assert_eq!(zp_try_div_exact(&a, &zp(&[1, -1])), None);
    }
}

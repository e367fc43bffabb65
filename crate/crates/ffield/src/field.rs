//! Finite-field contexts: F_q with q = p^f, a fixed generator, full discrete
//! log / exponential tables, and the absolute trace table. Elements are coded
//! as base-p digit packings (code = sum digit_i p^i < q).

use hgm_core::arith::{factor_u64, is_prime_u64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const DEFAULT_SIZE_CAP: u64 = 1 << 23;
pub const DEFAULT_SEED: u64 = 0x00c0ffee;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("q = {0} exceeds the size cap {1}")]
    TooLarge(u64, u64),
    #[error("invalid field parameters: {0}")]
    BadParams(String),
}

#[derive(Debug)]
pub struct FieldContext {
    pub p: u64,
    pub f: u32,
    pub q: u64,
    /// Monic irreducible modulus, constant term first, length f+1 (for f = 1
    /// this is just x).
    pub modulus: Vec<u64>,
    pub generator_code: u64,
    pub seed: u64,
    exp_table: Vec<u32>,
    log_table: Vec<u32>,
    trace_table: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let f = modulus.len() - 1;
    let mut prod = vec![0u128; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] += (ai as u128) * (bj as u128);
        }
    }
    let mut prod: Vec<u64> = prod.into_iter().map(|c| (c % p as u128) as u64).collect();
    // reduce by the monic modulus
    for i in (f..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..f {
            let sub = (c as u128 * modulus[j] as u128) % p as u128;
            let idx = i - f + j;
            prod[idx] = ((prod[idx] as u128 + p as u128 * p as u128 - sub) % p as u128) as u64;
        }
    }
    prod.truncate(f.max(1));
    while prod.len() < f.max(1) {
        prod.push(0);
    }
    prod
}

fn poly_pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let f = modulus.len() - 1;
    let mut acc = vec![0u64; f.max(1)];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd_is_one(a: &[u64], b: &[u64], p: u64) -> bool {
    let inv = |x: u64| -> u64 { mod_pow(x, p - 2, p) };
    let norm = |v: &mut Vec<u64>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    };
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    norm(&mut a);
    norm(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        // a mod b
        let db = b.len() - 1;
        let lead_inv = inv(*b.last().unwrap());
        while a.len() > db && !(a.len() == 1 && a[0] == 0) {
            let da = a.len() - 1;
            if da < db {
                break;
            }
            let c = (a[da] as u128 * lead_inv as u128 % p as u128) as u64;
            for j in 0..=db {
                let idx = da - db + j;
                let sub = c as u128 * b[j] as u128 % p as u128;
                a[idx] = ((a[idx] as u128 + p as u128 * p as u128 - sub) % p as u128) as u64;
            }
            norm(&mut a);
            if a.iter().all(|&x| x == 0) {
                a = vec![0];
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1 && a[0] != 0
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

fn is_irreducible(modulus: &[u64], p: u64) -> bool {
    let f = (modulus.len() - 1) as u64;
    let x = vec![0u64, 1];
    // frob_i = x^{p^i} mod modulus
    let mut frob = x.clone();
    let mut frobs = Vec::with_capacity(f as usize + 1);
    frobs.push(frob.clone()); // i = 0
    for _ in 0..f {
        frob = poly_pow_mod(&frob, p, modulus, p);
        frobs.push(frob.clone());
    }
    // x^{p^f} == x
    let xf = normalize(&frobs[f as usize]);
    if xf != normalize(&x) {
        return false;
    }
    for (ell, _) in factor_u64(f) {
        let i = (f / ell) as usize;
        // gcd(x^{p^{f/ell}} - x, modulus) must be 1
        let mut diff = frobs[i].clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        if !poly_gcd_is_one(&diff, modulus, p) {
            return false;
        }
    }
    true
}

fn normalize(v: &[u64]) -> Vec<u64> {
    let mut v = v.to_vec();
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

impl FieldContext {
    pub fn build(p: u64, f: u32) -> Result<Self, FieldError> {
        Self::build_with(p, f, DEFAULT_SEED, DEFAULT_SIZE_CAP)
    }

    pub fn build_with(p: u64, f: u32, seed: u64, cap: u64) -> Result<Self, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        if f == 0 {
            return Err(FieldError::BadParams("f must be >= 1".into()));
        }
        let q = p.checked_pow(f).ok_or(FieldError::TooLarge(u64::MAX, cap))?;
        if q > cap {
            return Err(FieldError::TooLarge(q, cap));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 8) ^ f as u64);

        let modulus: Vec<u64> = if f == 1 {
            vec![0, 1]
        } else {
            loop {
                let mut m: Vec<u64> = (0..f).map(|_| rng.gen_range(0..p)).collect();
                m.push(1); // monic
                if m[0] == 0 {
                    continue; // reducible (root 0)
                }
                if is_irreducible(&m, p) {
                    break m;
                }
            }
        };

        let fac_q1 = factor_u64(q - 1);
        let code_of = |poly: &[u64]| -> u64 {
            let mut code = 0u64;
            for i in (0..poly.len()).rev() {
                code = code * p + poly[i];
            }
            code
        };
        let poly_of = |code: u64| -> Vec<u64> {
            let mut digits = vec![0u64; f as usize];
            let mut c = code;
            for d in digits.iter_mut() {
                *d = c % p;
                c /= p;
            }
            digits
        };

        // find a generator of F_q^*, candidates in seeded order
        let generator_code = loop {
            let cand = rng.gen_range(1..q);
            let cand_poly = poly_of(cand);
            let mut ok = true;
            for (ell, _) in &fac_q1 {
                let e = (q - 1) / ell;
                let pw = poly_pow_mod(&cand_poly, e, &modulus, p);
                let is_one = pw[0] == 1 && pw.iter().skip(1).all(|&c| c == 0);
                if is_one {
                    ok = false;
                    break;
                }
            }
            if ok {
                break cand;
            }
        };

        // exponential and log tables by walking the powers of g
        let mut exp_table = vec![0u32; (q - 1) as usize];
        let mut log_table = vec![NO_LOG; q as usize];
        let g_poly = poly_of(generator_code);
        let mut cur = vec![0u64; f as usize];
        cur[0] = 1;
        for (k, slot) in exp_table.iter_mut().enumerate() {
            let code = code_of(&cur);
            *slot = code as u32;
            debug_assert_eq!(log_table[code as usize], NO_LOG, "generator order defect");
            log_table[code as usize] = k as u32;
            cur = poly_mul_mod(&cur, &g_poly, &modulus, p);
        }
        debug_assert!(cur[0] == 1 && cur.iter().skip(1).all(|&c| c == 0));

        // trace of the basis monomials via Frobenius images of x
        let mut tr_basis = vec![0u64; f as usize];
        if f == 1 {
            tr_basis[0] = 1;
        } else {
            let x = vec![0u64, 1];
            let mut frob = x.clone();
            let mut acc: Vec<Vec<u64>> = vec![vec![0; f as usize]; f as usize];
            for _ in 0..f {
                // add powers of this Frobenius image: (frob)^j for j < f
                let mut z = vec![0u64; f as usize];
                z[0] = 1;
                for j in 0..f as usize {
                    for (slot, c) in acc[j].iter_mut().zip(z.iter()) {
                        *slot = (*slot + c) % p;
                    }
                    if j + 1 < f as usize {
                        z = poly_mul_mod(&z, &frob, &modulus, p);
                    }
                }
                frob = poly_pow_mod(&frob, p, &modulus, p);
            }
            for j in 0..f as usize {
                debug_assert!(acc[j].iter().skip(1).all(|&c| c == 0), "trace must land in F_p");
                tr_basis[j] = acc[j][0];
            }
        }
        let mut trace_table = vec![0u32; q as usize];
        for (code, slot) in trace_table.iter_mut().enumerate() {
            let digits = poly_of(code as u64);
            let mut t = 0u128;
            for (d, tb) in digits.iter().zip(tr_basis.iter()) {
                t += *d as u128 * *tb as u128;
            }
            *slot = (t % p as u128) as u32;
        }

        Ok(FieldContext {
            p,
            f,
            q,
            modulus,
            generator_code,
            seed,
            exp_table,
            log_table,
            trace_table,
        })
    }

    /// Code of g^k.
    #[inline(always)]
    pub fn exp(&self, k: u64) -> u64 {
        self.exp_table[(k % (self.q - 1)) as usize] as u64
    }

    /// Discrete log of a nonzero element code.
    #[inline(always)]
    pub fn log(&self, code: u64) -> Option<u64> {
        let v = self.log_table[code as usize];
        if v == NO_LOG {
            None
        } else {
            Some(v as u64)
        }
    }

    /// Absolute trace of an element code, in F_p.
    #[inline(always)]
    pub fn trace(&self, code: u64) -> u64 {
        self.trace_table[code as usize] as u64
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.exp_table
    }

    /// Embed a rational num/den into F_q (both reduced mod p; den must be a
    /// unit). Returns the element code (a prime-field element).
    pub fn embed_rational(&self, num: &num_bigint::BigInt, den: &num_bigint::BigInt) -> Option<u64> {
        use num_traits::{Signed, Zero};
        let p = num_bigint::BigInt::from(self.p);
        let n = ((num % &p) + &p) % &p;
        let d = ((den % &p) + &p) % &p;
        if d.is_zero() {
            return None;
        }
        let n: u64 = n.abs().try_into().ok()?;
        let d: u64 = d.abs().try_into().ok()?;
        let dinv = mod_pow(d, self.p - 2, self.p);
        Some((n as u128 * dinv as u128 % self.p as u128) as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let ctx = FieldContext::build(7, 1).unwrap();
        assert_eq!(ctx.q, 7);
        // generator has full order: log table covers 1..7
        for c in 1..7u64 {
            assert!(ctx.log(c).is_some());
        }
        assert_eq!(ctx.log(ctx.exp(0)).unwrap(), 0);
        // log(xy) = log x + log y mod q-1, spot check
        for a in 1..7u64 {
            for b in 1..7u64 {
                let la = ctx.log(a).unwrap();
                let lb = ctx.log(b).unwrap();
                let ab = a * b % 7;
                assert_eq!(ctx.log(ab).unwrap(), (la + lb) % 6);
            }
        }
        // trace in F_p is the identity
        for c in 0..7u64 {
            assert_eq!(ctx.trace(c), c);
        }
    }

    #[test]
    fn extension_field_q9() {
        let ctx = FieldContext::build(3, 2).unwrap();
        assert_eq!(ctx.q, 9);
        for c in 1..9u64 {
            assert!(ctx.log(c).is_some(), "code {c} must have a log");
        }
        for c in 0..9u64 {
            assert!(ctx.trace(c) < 3);
        }
        // trace is additive: Tr(x + y) = Tr x + Tr y. Build addition on codes.
        let add = |a: u64, b: u64| -> u64 {
            let (a0, a1) = (a % 3, a / 3);
            let (b0, b1) = (b % 3, b / 3);
            (a0 + b0) % 3 + 3 * ((a1 + b1) % 3)
        };
        for a in 0..9u64 {
            for b in 0..9u64 {
                assert_eq!(ctx.trace(add(a, b)), (ctx.trace(a) + ctx.trace(b)) % 3);
            }
        }
        // trace is not identically zero
        assert!((0..9u64).any(|c| ctx.trace(c) != 0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(FieldContext::build(4, 1), Err(FieldError::NotPrime(4))));
        assert!(matches!(
            FieldContext::build_with(2, 30, DEFAULT_SEED, DEFAULT_SIZE_CAP),
            Err(FieldError::TooLarge(..))
        ));
    }

    #[test]
    fn deterministic_given_seed() {
        let a = FieldContext::build_with(13, 3, 42, DEFAULT_SIZE_CAP).unwrap();
        let b = FieldContext::build_with(13, 3, 42, DEFAULT_SIZE_CAP).unwrap();
        assert_eq!(a.generator_code, b.generator_code);
        assert_eq!(a.modulus, b.modulus);
        let c = FieldContext::build_with(13, 3, 43, DEFAULT_SIZE_CAP).unwrap();
        // different seed nearly always picks a different generator or modulus
        assert!(c.generator_code != a.generator_code || c.modulus != a.modulus);
    }
}

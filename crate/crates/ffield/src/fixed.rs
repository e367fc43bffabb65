//! Fixed-point real and complex arithmetic on [u64; L] limbs.
//!
//! A value is sign * mag / 2^(64*(L-1)): one integer limb, L-1 fraction
//! limbs. All kernel arithmetic (Gauss tables, FFTs, hypergeometric sums)
//! runs on these types; magnitudes are bounded by the algorithms so the
//! integer limb never overflows. L = 4 gives 192 fraction bits, L = 5 gives
//! 256, and so on.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::One;

#[derive(Clone, Copy, Debug)]
pub struct Fx<const L: usize> {
    pub neg: bool,
    pub mag: [u64; L],
}

#[inline(always)]
fn mag_is_zero<const L: usize>(m: &[u64; L]) -> bool {
    m.iter().all(|&x| x == 0)
}

#[inline(always)]
fn mag_cmp<const L: usize>(a: &[u64; L], b: &[u64; L]) -> std::cmp::Ordering {
    for i in (0..L).rev() {
        if a[i] != b[i] {
            return a[i].cmp(&b[i]);
        }
    }
    std::cmp::Ordering::Equal
}

#[inline(always)]
fn mag_add<const L: usize>(a: &[u64; L], b: &[u64; L]) -> [u64; L] {
    let mut out = [0u64; L];
    let mut carry = 0u64;
    for i in 0..L {
        let (s1, c1) = a[i].overflowing_add(b[i]);
        let (s2, c2) = s1.overflowing_add(carry);
        out[i] = s2;
        carry = (c1 as u64) + (c2 as u64);
    }
    debug_assert_eq!(carry, 0, "fixed-point magnitude overflow in add");
    out
}

#[inline(always)]
fn mag_sub<const L: usize>(a: &[u64; L], b: &[u64; L]) -> [u64; L] {
    let mut out = [0u64; L];
    let mut borrow = 0u64;
    for i in 0..L {
        let (d1, b1) = a[i].overflowing_sub(b[i]);
        let (d2, b2) = d1.overflowing_sub(borrow);
        out[i] = d2;
        borrow = (b1 as u64) + (b2 as u64);
    }
    debug_assert_eq!(borrow, 0);
    out
}

impl<const L: usize> Fx<L> {
    pub const ZERO: Fx<L> = Fx { neg: false, mag: [0; L] };

    #[inline(always)]
    pub fn one() -> Self {
        let mut mag = [0u64; L];
        mag[L - 1] = 1;
        Fx { neg: false, mag }
    }

    #[inline(always)]
    pub fn is_zero(&self) -> bool {
        mag_is_zero(&self.mag)
    }

    #[inline(always)]
    pub fn neg(&self) -> Self {
        if self.is_zero() {
            *self
        } else {
            Fx { neg: !self.neg, mag: self.mag }
        }
    }

    #[inline(always)]
    pub fn add(&self, rhs: &Self) -> Self {
        if self.neg == rhs.neg {
            Fx { neg: self.neg, mag: mag_add(&self.mag, &rhs.mag) }
        } else {
            match mag_cmp(&self.mag, &rhs.mag) {
                std::cmp::Ordering::Equal => Fx::ZERO,
                std::cmp::Ordering::Greater => Fx { neg: self.neg, mag: mag_sub(&self.mag, &rhs.mag) },
                std::cmp::Ordering::Less => Fx { neg: rhs.neg, mag: mag_sub(&rhs.mag, &self.mag) },
            }
        }
    }

    #[inline(always)]
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Rounded product; truncated schoolbook keeping two guard limbs below
    /// the cut.
    #[inline(always)]
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut prod = [0u64; 64]; // generous upper bound; only 2L used
        debug_assert!(2 * L <= 64);
        // schoolbook, skipping partial products that land entirely below the
        // guard zone (limbs < L-3)
        let lo_cut = L.saturating_sub(3);
        for i in 0..L {
            if self.mag[i] == 0 {
                continue;
            }
            let ai = self.mag[i] as u128;
            let mut carry: u128 = 0;
            for j in 0..L {
                let idx = i + j;
                if idx + 1 < lo_cut {
                    continue;
                }
                let acc = prod[idx] as u128 + ai * rhs.mag[j] as u128 + carry;
                prod[idx] = acc as u64;
                carry = acc >> 64;
            }
            let mut idx = i + L;
            while carry > 0 {
                let acc = prod[idx] as u128 + carry;
                prod[idx] = acc as u64;
                carry = acc >> 64;
                idx += 1;
            }
        }
        debug_assert_eq!(prod[2 * L - 1], 0, "fixed-point overflow in mul");
        let mut mag = [0u64; L];
        mag.copy_from_slice(&prod[L - 1..2 * L - 1]);
        // round half up on the top dropped bit
        if L >= 2 && prod[L - 2] >> 63 == 1 {
            let mut carry = 1u64;
            for limb in mag.iter_mut() {
                let (s, c) = limb.overflowing_add(carry);
                *limb = s;
                carry = c as u64;
                if carry == 0 {
                    break;
                }
            }
        }
        let neg = self.neg != rhs.neg && !mag_is_zero(&mag);
        Fx { neg, mag }
    }

    /// Halve in place (exact).
    #[inline(always)]
    pub fn shr1(&self) -> Self {
        let mut mag = [0u64; L];
        let mut carry = 0u64;
        for i in (0..L).rev() {
            mag[i] = (self.mag[i] >> 1) | (carry << 63);
            carry = self.mag[i] & 1;
        }
        Fx { neg: self.neg && !mag_is_zero(&mag), mag }
    }

    /// Multiply by 2^k (k small, exact; panics on overflow in debug).
    pub fn shl(&self, k: u32) -> Self {
        let mut out = *self;
        for _ in 0..k {
            out = out.add(&out);
        }
        out
    }

    /// Shift right by k bits.
    pub fn shr(&self, k: u32) -> Self {
        let mut out = *self;
        for _ in 0..k {
            out = out.shr1();
        }
        out
    }

    pub fn from_u64(v: u64) -> Self {
        let mut mag = [0u64; L];
        mag[L - 1] = v;
        Fx { neg: false, mag }
    }

    pub fn from_i64(v: i64) -> Self {
        let f = Self::from_u64(v.unsigned_abs());
        Fx { neg: v < 0 && v != 0, mag: f.mag }
    }

    pub fn from_f64(v: f64) -> Self {
        let neg = v < 0.0;
        let mut a = v.abs();
        let mut mag = [0u64; L];
        let int = a.floor();
        debug_assert!(int < 1.8e19);
        mag[L - 1] = int as u64;
        a -= int;
        for i in (0..L - 1).rev() {
            a *= 1.8446744073709552e19; // 2^64
            let d = a.floor();
            mag[i] = d as u64;
            a -= d;
        }
        Fx { neg: neg && !mag_is_zero(&mag), mag }
    }

    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0f64;
        for i in 0..L {
            acc = acc / 1.8446744073709552e19 + self.mag[i] as f64;
        }
        // loop ends at the integer limb, so acc is already scaled
        if self.neg {
            -acc
        } else {
            acc
        }
    }

    pub fn to_big_rational(&self) -> BigRational {
        let mut digits = Vec::with_capacity(2 * L);
        for limb in &self.mag {
            digits.push(*limb as u32);
            digits.push((limb >> 32) as u32);
        }
        let mag = BigUint::new(digits);
        let sign = if self.neg { Sign::Minus } else { Sign::Plus };
        let num = BigInt::from_biguint(sign, mag);
        let den = BigInt::one() << (64 * (L - 1));
        BigRational::new(num, den)
    }

    /// Nearest integer and the absolute distance to it.
    pub fn to_nearest_integer(&self) -> (BigInt, f64) {
        let mut int_mag = BigUint::from(self.mag[L - 1]);
        // fraction in [0,1) from the top two fraction limbs
        let frac = if L >= 3 {
            self.mag[L - 2] as f64 / 1.8446744073709552e19
                + self.mag[L - 3] as f64 / 3.402823669209385e38
        } else {
            self.mag[L - 2] as f64 / 1.8446744073709552e19
        };
        let (rounded_up, gap) = if frac >= 0.5 { (true, 1.0 - frac) } else { (false, frac) };
        if rounded_up {
            int_mag += 1u32;
        }
        let sign = if self.neg { Sign::Minus } else { Sign::Plus };
        (BigInt::from_biguint(sign, int_mag), gap)
    }

    /// Newton reciprocal; input must be normalized away from zero (the
    /// callers scale by powers of two first).
    pub fn recip(&self) -> Self {
        let seed = 1.0 / self.to_f64();
        let mut x = Self::from_f64(seed.abs());
        let a = Fx { neg: false, mag: self.mag };
        let two = Self::from_u64(2);
        for _ in 0..8 {
            // x <- x (2 - a x)
            let ax = a.mul(&x);
            let t = two.sub(&ax);
            x = x.mul(&t);
        }
        Fx { neg: self.neg, mag: x.mag }
    }

    /// Leading bit position relative to the binary point (value ~ 2^k).
    pub fn log2_approx(&self) -> i32 {
        for i in (0..L).rev() {
            if self.mag[i] != 0 {
                return 64 * (i as i32 - (L as i32 - 1)) + (63 - self.mag[i].leading_zeros() as i32);
            }
        }
        i32::MIN
    }
}

/// Complex number on fixed-point parts.
#[derive(Clone, Copy, Debug)]
pub struct Cx<const L: usize> {
    pub re: Fx<L>,
    pub im: Fx<L>,
}

impl<const L: usize> Cx<L> {
    pub const ZERO: Cx<L> = Cx { re: Fx::ZERO, im: Fx::ZERO };

    #[inline(always)]
    pub fn one() -> Self {
        Cx { re: Fx::one(), im: Fx::ZERO }
    }

    pub fn new(re: Fx<L>, im: Fx<L>) -> Self {
        Cx { re, im }
    }

    #[inline(always)]
    pub fn add(&self, rhs: &Self) -> Self {
        Cx { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    #[inline(always)]
    pub fn sub(&self, rhs: &Self) -> Self {
        Cx { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }

    #[inline(always)]
    pub fn mul(&self, rhs: &Self) -> Self {
        let ac = self.re.mul(&rhs.re);
        let bd = self.im.mul(&rhs.im);
        let ad = self.re.mul(&rhs.im);
        let bc = self.im.mul(&rhs.re);
        Cx { re: ac.sub(&bd), im: ad.add(&bc) }
    }

    #[inline(always)]
    pub fn conj(&self) -> Self {
        Cx { re: self.re, im: self.im.neg() }
    }

    #[inline(always)]
    pub fn neg(&self) -> Self {
        Cx { re: self.re.neg(), im: self.im.neg() }
    }

    #[inline(always)]
    pub fn shr1(&self) -> Self {
        Cx { re: self.re.shr1(), im: self.im.shr1() }
    }

    pub fn norm_sqr(&self) -> Fx<L> {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn to_c64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Complex reciprocal with power-of-two pre-scaling for range safety.
    pub fn recip(&self) -> Self {
        let k = self.re.log2_approx().max(self.im.log2_approx());
        // scale so parts are around 1
        let scaled = if k > 0 { self.shr_k(k as u32) } else { self.shl_k((-k) as u32) };
        let n = scaled.norm_sqr();
        let ninv = n.recip();
        let conj = scaled.conj();
        let mut out = Cx { re: conj.re.mul(&ninv), im: conj.im.mul(&ninv) };
        out = if k > 0 { out.shr_k(k as u32) } else { out.shl_k((-k) as u32) };
        out
    }

    pub fn shr_k(&self, k: u32) -> Self {
        Cx { re: self.re.shr(k), im: self.im.shr(k) }
    }

    pub fn shl_k(&self, k: u32) -> Self {
        Cx { re: self.re.shl(k), im: self.im.shl(k) }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.recip())
    }
}

// pi * 2^1024, little-endian u64 limbs (1024 fraction bits + integer part)
pub(crate) const PI_LIMBS_1024: [u64; 17] = [
    0x636920d871574e69, 0x0801f2e2858efc16, 0x24a19947b3916cf7, 0xba7c9045f12c7f99,
    0xb8e1afed6a267e96, 0x2ffd72dbd01adfb7, 0xd1310ba698dfb5ac, 0x9216d5d98979fb1b,
    0x3f84d5b5b5470917, 0xc0ac29b7c97c50dd, 0xbe5466cf34e90c6c, 0x452821e638d01377,
    0x082efa98ec4e6c89, 0xa4093822299f31d0, 0x13198a2e03707344, 0x243f6a8885a308d3,
    0x0000000000000003,
];

/// pi at the crate's fixed precision (L-1 fraction limbs, truncated from the
/// 1024-bit constant).
pub fn pi<const L: usize>() -> Fx<L> {
    assert!(L <= 17);
    let mut mag = [0u64; L];
    for i in 0..L {
        mag[i] = PI_LIMBS_1024[17 - L + i];
    }
    Fx { neg: false, mag }
}

/// cos(theta) + i sin(theta) by Taylor series; theta must be modest (the
/// callers pass angles in [0, 2pi/3]).
pub fn expi<const L: usize>(theta: &Fx<L>) -> Cx<L> {
    let mut cos = Fx::<L>::one();
    let mut sin = Fx::<L>::ZERO;
    // term_k = theta^k / k!
    let mut term = Fx::<L>::one();
    let mut k = 0u64;
    loop {
        k += 1;
        // term <- term * theta / k
        term = term.mul(theta);
        term = div_by_small(&term, k);
        if term.is_zero() {
            break;
        }
        match k % 4 {
            1 => sin = sin.add(&term),
            2 => cos = cos.sub(&term),
            3 => sin = sin.sub(&term),
            _ => cos = cos.add(&term),
        }
        if k > 64 * L as u64 + 80 {
            break;
        }
    }
    Cx { re: cos, im: sin }
}

/// Exact-ish division by a small positive integer (long division over limbs).
pub fn div_by_small<const L: usize>(x: &Fx<L>, d: u64) -> Fx<L> {
    debug_assert!(d > 0);
    let mut mag = [0u64; L];
    let mut rem: u128 = 0;
    for i in (0..L).rev() {
        let cur = (rem << 64) | x.mag[i] as u128;
        mag[i] = (cur / d as u128) as u64;
        rem = cur % d as u128;
    }
    Fx { neg: x.neg && !mag_is_zero(&mag), mag }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F5 = Fx<5>;

    #[test]
    fn add_mul_basics() {
        let a = F5::from_f64(1.5);
        let b = F5::from_f64(-2.25);
        assert!((a.add(&b).to_f64() + 0.75).abs() < 1e-15);
        assert!((a.mul(&b).to_f64() + 3.375).abs() < 1e-15);
        assert!((a.sub(&b).to_f64() - 3.75).abs() < 1e-15);
    }

    #[test]
    fn pi_matches_f64() {
        let p = pi::<5>();
        assert!((p.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn expi_unit_modulus() {
        let theta = div_by_small(&pi::<5>(), 7);
        let z = expi(&theta);
        let n = z.norm_sqr().to_f64();
        assert!((n - 1.0).abs() < 1e-30, "norm^2 = {n}");
        let (re, im) = z.to_c64();
        assert!((re - (std::f64::consts::PI / 7.0).cos()).abs() < 1e-14);
        assert!((im - (std::f64::consts::PI / 7.0).sin()).abs() < 1e-14);
    }

    #[test]
    fn recip_works() {
        let a = F5::from_f64(123.456);
        let r = a.recip();
        assert!((r.to_f64() * 123.456 - 1.0).abs() < 1e-25);
        let c = Cx::<5>::new(F5::from_f64(3.0), F5::from_f64(-4.0));
        let rc = c.recip();
        let id = c.mul(&rc);
        assert!((id.re.to_f64() - 1.0).abs() < 1e-25);
        assert!(id.im.to_f64().abs() < 1e-25);
    }

    #[test]
    fn nearest_integer_and_gap() {
        let a = F5::from_f64(-14.0000003);
        let (n, gap) = a.to_nearest_integer();
        assert_eq!(n, num_bigint::BigInt::from(-14));
        assert!((gap - 3e-7).abs() < 1e-9);
    }

    #[test]
    fn big_rational_conversion() {
        let a = F5::from_f64(0.375);
        let r = a.to_big_rational();
        assert_eq!(r, BigRational::new(3.into(), 8.into()));
    }
}

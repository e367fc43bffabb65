//! Local Euler factors: integer polynomials 1 + c_1 T + ... with a declared
//! motivic weight, plus the power-sum/coefficient conversions and numeric
//! root-modulus checks shared by the trace, Asai and matcher layers.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CoreError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Direct,
    SelfdualCompleted,
    Fixture,
    Asai,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    #[serde(default)]
    pub degenerate: bool,
    #[serde(default)]
    pub provisional: bool,
}

/// Integer local factor L_p(T) = 1 + c_1 T + ... + c_deg T^deg.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalEulerFactor {
    pub p: u64,
    #[serde(with = "bigint_vec_serde")]
    pub coeffs: Vec<BigInt>,
    pub degree: usize,
    pub weight: u32,
    pub provenance: Provenance,
    #[serde(default)]
    pub flags: Flags,
}

mod bigint_vec_serde {
    use super::*;
    use serde::{Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let strs: Vec<String> = Vec::deserialize(d)?;
        strs.iter()
            .map(|s| BigInt::from_str(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl LocalEulerFactor {
    pub fn new(p: u64, coeffs: Vec<BigInt>, weight: u32, provenance: Provenance) -> Self {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        assert!(coeffs.first().map(|c| c.is_one()).unwrap_or(false), "constant term must be 1");
        LocalEulerFactor { p, degree: coeffs.len() - 1, coeffs, weight, provenance, flags: Flags::default() }
    }

    pub fn with_flags(mut self, flags: Flags) -> Self {
        self.flags = flags;
        self
    }

    /// Power sums of reciprocal roots up to order n (P_r = sum rho_i^r),
    /// derived from the coefficients by Newton's identities.
    pub fn power_sums(&self, n: usize) -> Vec<BigInt> {
        // L(T) = prod (1 - rho_i T) = sum c_k T^k with c_k = (-1)^k e_k
        let d = self.degree;
        let e: Vec<BigRational> = (0..=d)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                BigRational::from(&self.coeffs[k] * BigInt::from(sign))
            })
            .collect();
        let mut p = vec![BigRational::zero(); n + 1];
        for k in 1..=n {
            // P_k = (-1)^{k-1} k e_k + sum_{i=1}^{k-1} (-1)^{i-1} e_i P_{k-i}
            let mut acc = BigRational::zero();
            if k <= d {
                let sign = if (k - 1) % 2 == 0 { 1 } else { -1 };
                acc += &e[k] * BigRational::from(BigInt::from(sign as i64 * k as i64));
            }
            for i in 1..k {
                if i <= d {
                    let sign = if (i - 1) % 2 == 0 { 1 } else { -1 };
                    let term = &e[i] * &p[k - i] * BigRational::from(BigInt::from(sign));
                    acc += term;
                }
            }
            p[k] = acc;
        }
        p.into_iter().skip(1).map(|x| x.to_integer()).collect()
    }

    /// Reciprocal roots as f64 complex numbers (Durand-Kerner on the monic
    /// reversal); adequate for Weil-bound checks at the sizes this crate
    /// handles.
    pub fn reciprocal_roots_f64(&self) -> Vec<Complex64> {
        let d = self.degree;
        if d == 0 {
            return vec![];
        }
        // R(X) = X^d L(1/X) = X^d + c_1 X^{d-1} + ... + c_d, roots = reciprocal roots of L
        let coeffs: Vec<f64> = (0..=d).map(|k| self.coeffs[k].to_f64().unwrap_or(f64::NAN)).collect();
        let eval = |x: Complex64| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..=d {
                acc = acc * x + Complex64::new(coeffs[k], 0.0);
            }
            acc
        };
        let scale = coeffs.iter().skip(1).map(|c| c.abs().powf(1.0)).fold(1.0f64, f64::max).powf(1.0 / d as f64);
        let mut roots: Vec<Complex64> = (0..d)
            .map(|k| {
                let ang = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / d as f64;
                Complex64::new(ang.cos(), ang.sin()) * scale.max(1.0)
            })
            .collect();
        for _ in 0..300 {
            let mut delta = 0.0f64;
            for i in 0..d {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..d {
                    if i != j {
                        denom *= roots[i] - roots[j];
                    }
                }
                if denom.norm() == 0.0 {
                    continue;
                }
                let step = eval(roots[i]) / denom;
                roots[i] -= step;
                delta = delta.max(step.norm());
            }
            if delta < 1e-12 * scale.max(1.0) {
                break;
            }
        }
        roots
    }

    /// Relative deviation of every reciprocal-root modulus from p^{w/2}.
    pub fn max_root_modulus_deviation(&self) -> f64 {
        let target = (self.p as f64).powf(self.weight as f64 / 2.0);
        self.reciprocal_roots_f64()
            .iter()
            .map(|r| (r.norm() - target).abs() / target)
            .fold(0.0, f64::max)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }
}

/// Coefficients 1 + c_1 T + ... of prod(1 - rho_i T) from power sums
/// P_1..P_d of the reciprocal roots. Errors if a coefficient is non-integral.
pub fn coeffs_from_power_sums(power_sums: &[BigInt], degree: usize) -> Result<Vec<BigInt>, CoreError> {
    assert!(power_sums.len() >= degree);
    let mut e = vec![BigRational::zero(); degree + 1];
    e[0] = BigRational::one();
    for k in 1..=degree {
        // e_k = (1/k) sum_{i=1}^{k} (-1)^{i-1} e_{k-i} P_i
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let sign = if (i - 1) % 2 == 0 { 1 } else { -1 };
            acc += &e[k - i] * BigRational::from(&power_sums[i - 1] * BigInt::from(sign));
        }
        e[k] = acc / BigRational::from(BigInt::from(k as i64));
    }
    let mut out = Vec::with_capacity(degree + 1);
    for (k, ek) in e.iter().enumerate() {
        let signed = if k % 2 == 0 { ek.clone() } else { -ek.clone() };
        if !signed.denom().is_one() {
            return Err(CoreError::NonIntegral(format!("c_{k} = {signed}")));
        }
        out.push(signed.to_integer());
    }
    Ok(out)
}

/// Formal exp(-sum P_r T^r / r) truncated to `degree`; the round-trip oracle
/// for Newton-identity conversion.
pub fn exp_minus_power_sum_series(power_sums: &[BigInt], degree: usize) -> Vec<BigRational> {
    let mut logs = vec![BigRational::zero(); degree + 1];
    for r in 1..=degree.min(power_sums.len()) {
        logs[r] = -BigRational::new(power_sums[r - 1].clone(), BigInt::from(r as i64));
    }
    // exp via F' = L' F with F = exp(L): f_0 = 1, (k+1) f_{k+1} = sum_{j} (j+1) l_{j+1} f_{k-j}
    let mut f = vec![BigRational::zero(); degree + 1];
    f[0] = BigRational::one();
    for k in 0..degree {
        let mut acc = BigRational::zero();
        for j in 0..=k {
            let dl = &logs[j + 1] * BigRational::from(BigInt::from((j + 1) as i64));
            acc += dl * &f[k - j];
        }
        f[k + 1] = acc / BigRational::from(BigInt::from((k + 1) as i64));
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factor(p: u64, coeffs: &[i64], w: u32) -> LocalEulerFactor {
        LocalEulerFactor::new(p, coeffs.iter().map(|&c| BigInt::from(c)).collect(), w, Provenance::Direct)
    }

    #[test]
    fn power_sum_roundtrip() {
        // (1 - 2T)(1 - 3T)(1 + 5T) = 1 + 0T -19T^2 + 30T^3
        let f = factor(7, &[1, 0, -19, 30], 2);
        let ps = f.power_sums(3);
        assert_eq!(ps, vec![BigInt::from(0), BigInt::from(38), BigInt::from(-90)]);
        let back = coeffs_from_power_sums(&ps, 3).unwrap();
        assert_eq!(back, f.coeffs);
        let series = exp_minus_power_sum_series(&ps, 3);
        for k in 0..=3 {
            assert_eq!(series[k], BigRational::from(f.coeffs[k].clone()));
        }
    }

    #[test]
    fn root_moduli_weil() {
        // (1 + 7T)(1 + 49T^2): weight 2 at p = 7, all reciprocal roots |rho| = 7
        let f = factor(7, &[1, 7, 49, 343], 2);
        assert!(f.max_root_modulus_deviation() < 1e-8);
        // synthetic violation: 1 + T + 7^9 T^2 declared weight 4 fails badly
        let bad = factor(7, &[1, 1, 40353607], 4);
        assert!(bad.max_root_modulus_deviation() > 1e-3);
    }
}

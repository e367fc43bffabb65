//! Exact series coefficients A_n = prod (alpha_j)_n / prod (beta_j)_n and the
//! formal check that the truncated series is annihilated by the
//! hypergeometric operator z prod(theta + alpha_j) - prod(theta + beta_j - 1),
//! theta = z d/dz.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::data::{Frac, HypergeometricData};

#[derive(Debug, Clone)]
pub struct SeriesTruncation {
    pub data: HypergeometricData,
    pub coeffs: Vec<BigRational>,
}

fn frac_to_big(f: &Frac) -> BigRational {
    BigRational::new(BigInt::from(*f.numer()), BigInt::from(*f.denom()))
}

impl HypergeometricData {
    /// A_0..A_N, exact.
    pub fn series_coefficients(&self, n_max: usize) -> SeriesTruncation {
        let mut coeffs = Vec::with_capacity(n_max + 1);
        let mut a = BigRational::one();
        coeffs.push(a.clone());
        for n in 0..n_max {
            let nn = BigRational::from(BigInt::from(n));
            let mut num = BigRational::one();
            let mut den = BigRational::one();
            for al in &self.alpha {
                num *= frac_to_big(al) + &nn;
            }
            for be in &self.beta {
                den *= frac_to_big(be) + &nn;
            }
            a = a * num / den;
            coeffs.push(a.clone());
        }
        SeriesTruncation { data: self.clone(), coeffs }
    }

    /// Expansion of prod_j (theta + c_j) as coefficients of theta^k.
    pub fn theta_product(shifts: &[BigRational]) -> Vec<BigRational> {
        let mut poly = vec![BigRational::one()];
        for c in shifts {
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (k, coef) in poly.iter().enumerate() {
                next[k] += coef * c;
                next[k + 1] += coef;
            }
            poly = next;
        }
        poly
    }

    pub fn theta_alpha(&self) -> Vec<BigRational> {
        let shifts: Vec<BigRational> = self.alpha.iter().map(frac_to_big).collect();
        Self::theta_product(&shifts)
    }

    pub fn theta_beta_minus_one(&self) -> Vec<BigRational> {
        let shifts: Vec<BigRational> = self
            .beta
            .iter()
            .map(|b| frac_to_big(b) - BigRational::one())
            .collect();
        Self::theta_product(&shifts)
    }
}

impl SeriesTruncation {
    /// Apply the operator formally to the truncation and test that every
    /// computable residual coefficient vanishes. The two operator factors are
    /// applied through their theta-expansions, so a corrupted coefficient
    /// breaks the check.
    pub fn ode_annihilates(&self) -> bool {
        let ta = self.data.theta_alpha();
        let tb = self.data.theta_beta_minus_one();
        let n_max = self.coeffs.len() - 1;
        for n in 0..=n_max {
            // z * prod(theta+alpha) f contributes at z^n from A_{n-1}
            let mut lhs = BigRational::zero();
            if n >= 1 {
                let a_prev = &self.coeffs[n - 1];
                let mut pw = BigRational::one();
                let nn = BigRational::from(BigInt::from(n - 1));
                for c in &ta {
                    lhs += c * &pw * a_prev;
                    pw *= &nn;
                }
            }
            // prod(theta+beta-1) f contributes at z^n from A_n
            let mut rhs = BigRational::zero();
            {
                let a_n = &self.coeffs[n];
                let mut pw = BigRational::one();
                let nn = BigRational::from(BigInt::from(n));
                for c in &tb {
                    rhs += c * &pw * a_n;
                    pw *= &nn;
                }
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

/// Convenience wrapper: coefficients to order N, then the annihilation check.
pub fn ode_residual_vanishes(data: &HypergeometricData, n_max: usize) -> bool {
    data.series_coefficients(n_max).ode_annihilates()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn k3() -> HypergeometricData {
        HypergeometricData::parse_strs("1/2,1/4,3/4", "1,1,1").unwrap()
    }

    fn sextic() -> HypergeometricData {
        HypergeometricData::parse_strs("1/2,1/3,2/3,1/6,5/6", "1,1,1,1,1").unwrap()
    }

    fn big(n: u64) -> BigInt {
        BigInt::from(n)
    }

    fn factorial(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, k| acc * big(k))
    }

    #[test]
    fn k3_first_coefficient() {
        let s = k3().series_coefficients(1);
        assert_eq!(s.coeffs[1], BigRational::new(BigInt::from(3), BigInt::from(32)));
    }

    #[test]
    fn k3_coefficients_match_factorial_form() {
        // A_n * 256^n = (4n)! / n!^4 for n <= 50
        let s = k3().series_coefficients(50);
        for n in 0..=50u64 {
            let lhs = &s.coeffs[n as usize] * BigRational::from(big(256).pow(n as u32));
            let rhs = BigRational::new(factorial(4 * n), factorial(n).pow(4));
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn sextic_coefficients_match_factorial_form() {
        let s = sextic().series_coefficients(30);
        for n in 0..=30u64 {
            let lhs = &s.coeffs[n as usize] * BigRational::from(big(46656).pow(n as u32));
            let rhs = BigRational::new(factorial(6 * n), factorial(n).pow(6));
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn ode_annihilates_table1_rows() {
        for row in crate::tables::table1_rows() {
            let d = row.data().unwrap();
            assert!(ode_residual_vanishes(&d, 30), "row {}", row.id);
        }
        assert!(ode_residual_vanishes(&k3(), 30));
    }

    #[test]
    fn ode_detects_corruption() {
        let mut s = k3().series_coefficients(30);
        s.coeffs[5] += BigRational::one();
        assert!(!s.ode_annihilates());
    }

    #[test]
    fn sextic_operator_matches_displayed_picard_fuchs() {
        // Displayed operator: theta^5 - 6 lambda prod_{k=1}^{5} (6 theta + k)
        // = -(z prod(theta + alpha) - theta^5) under z = 6^6 lambda, so the
        // theta expansion of prod(theta+alpha) times 6^5 must equal
        // prod_{k=1}^5 (6 theta + k) expanded in theta.
        let d = sextic();
        let ta = d.theta_alpha();
        let mut displayed = vec![BigRational::one()];
        for k in 1..=5u32 {
            let mut next = vec![BigRational::zero(); displayed.len() + 1];
            for (i, c) in displayed.iter().enumerate() {
                next[i] += c * BigRational::from(BigInt::from(k));
                next[i + 1] += c * BigRational::from(BigInt::from(6));
            }
            displayed = next;
        }
        let scale = BigRational::from(BigInt::from(6u64.pow(5)));
        for (i, c) in ta.iter().enumerate() {
            assert_eq!(c * &scale, displayed[i], "theta^{i}");
        }
        // also beta side is theta^d exactly for beta = {1,...,1}
        let tb = d.theta_beta_minus_one();
        for (i, c) in tb.iter().enumerate() {
            if i == 5 {
                assert!(c.is_one());
            } else {
                assert!(c.abs().is_zero());
            }
        }
    }
}

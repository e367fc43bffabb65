//! Classification of primes for a specialization argument t: the excluded
//! set (primes of the parameter denominators, of M, of t, of t-1) and the
//! degenerate subset (ord_p(t-1) >= 2).

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factor_bigint, prime_divisors};
use crate::data::HypergeometricData;
use crate::error::CoreError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecializationPoint {
    #[serde(with = "crate::data::big_ratio_serde")]
    pub t: BigRational,
    pub excluded_primes: BTreeSet<u64>,
    pub degenerate_primes: BTreeSet<u64>,
}

impl HypergeometricData {
    /// Excluded and degenerate primes for the argument t (the direct series
    /// argument; good primes are everything else).
    pub fn classify_primes(&self, t: &BigRational) -> Result<SpecializationPoint, CoreError> {
        if t.is_zero() {
            return Err(CoreError::ZeroArgument);
        }
        let mut excluded = BTreeSet::new();
        for (p, _) in crate::arith::factor_u64(self.lcm_den) {
            excluded.insert(p);
        }
        for v in [&self.m_const, t] {
            for p in prime_divisors(v.numer())? {
                excluded.insert(p);
            }
            for p in prime_divisors(v.denom())? {
                excluded.insert(p);
            }
        }
        let tm1 = t - BigRational::one();
        let mut degenerate = BTreeSet::new();
        if !tm1.is_zero() {
            for (p, e) in factor_bigint(tm1.numer())? {
                excluded.insert(p);
                if e >= 2 {
                    degenerate.insert(p);
                }
            }
            for p in prime_divisors(tm1.denom())? {
                excluded.insert(p);
            }
        }
        Ok(SpecializationPoint { t: t.clone(), excluded_primes: excluded, degenerate_primes: degenerate })
    }

    pub fn is_good_prime(&self, t: &BigRational, p: u64) -> Result<bool, CoreError> {
        let sp = self.classify_primes(t)?;
        Ok(!sp.excluded_primes.contains(&p))
    }

    /// Good primes up to and including `bound`, optionally admitting the
    /// degenerate ones (ord_p(t-1) >= 2).
    pub fn good_primes_upto(
        &self,
        t: &BigRational,
        bound: u64,
        allow_degenerate: bool,
    ) -> Result<Vec<u64>, CoreError> {
        let sp = self.classify_primes(t)?;
        let mut out = Vec::new();
        for p in 2..=bound {
            if !crate::arith::is_prime_u64(p) {
                continue;
            }
            if sp.excluded_primes.contains(&p) {
                if allow_degenerate && sp.degenerate_primes.contains(&p) {
                    out.push(p);
                }
                continue;
            }
            out.push(p);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::big_ratio_serde::parse_big_rational;

    fn k3() -> HypergeometricData {
        HypergeometricData::parse_strs("1/2,1/4,3/4", "1,1,1").unwrap()
    }

    #[test]
    fn k3_at_minus_one_over_48() {
        let t = parse_big_rational("-1/48").unwrap();
        let sp = k3().classify_primes(&t).unwrap();
        assert!(sp.excluded_primes.contains(&2));
        assert!(sp.excluded_primes.contains(&3));
        assert!(sp.excluded_primes.contains(&7)); // 7 | num(1 - t) = 49
        assert_eq!(sp.degenerate_primes.iter().copied().collect::<Vec<_>>(), vec![7]);
    }

    #[test]
    fn row3_exclusions() {
        let d = HypergeometricData::parse_strs("1/2,1/2,1/2,1/2,1/2", "1,1,1,1,1").unwrap();
        let t = parse_big_rational("-1/1024").unwrap();
        let sp = d.classify_primes(&t).unwrap();
        let ex: Vec<u64> = sp.excluded_primes.iter().copied().collect();
        assert_eq!(ex, vec![2, 5, 41]); // 1 - t = 1025/1024 = 5^2 * 41 / 2^10
        assert_eq!(sp.degenerate_primes.iter().copied().collect::<Vec<_>>(), vec![5]);
    }

    #[test]
    fn zero_argument_rejected() {
        let err = k3().classify_primes(&BigRational::zero()).unwrap_err();
        assert!(matches!(err, CoreError::ZeroArgument));
    }
}

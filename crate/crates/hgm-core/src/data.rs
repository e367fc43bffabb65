//! Hypergeometric parameter pairs (alpha, beta) defined over Q, their
//! cyclotomic structure, gamma vectors and the scaling constant M.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::divisors;
use crate::error::CoreError;
use crate::polyx::{cyclotomic, zp_mul, zp_xn_minus_1};

/// A reduced fraction with small numerator/denominator, the parameter type
/// for hypergeometric data.
pub type Frac = Ratio<i64>;

pub fn parse_fraction(s: &str) -> Result<Frac, CoreError> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n
        .parse()
        .map_err(|_| CoreError::InvalidParameter(format!("bad fraction {s:?}")))?;
    let d: i64 = d
        .parse()
        .map_err(|_| CoreError::InvalidParameter(format!("bad fraction {s:?}")))?;
    if d == 0 {
        return Err(CoreError::InvalidParameter(format!("zero denominator in {s:?}")));
    }
    Ok(Frac::new(n, d))
}

/// Parse "1/2,1/3,2/3" into a fraction list.
pub fn parse_fraction_list(s: &str) -> Result<Vec<Frac>, CoreError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_fraction)
        .collect()
}

pub fn fraction_to_string(f: &Frac) -> String {
    if f.denom() == &1 {
        format!("{}", f.numer())
    } else {
        format!("{}/{}", f.numer(), f.denom())
    }
}

/// Validated hypergeometric data defined over Q.
///
/// `alpha` and `beta` are disjoint multisets of rationals in (0,1], with
/// 1 in beta; both root polynomials prod(x - e^{2 pi i a}) are products of
/// cyclotomic polynomials. `gamma_p`/`gamma_q` are the exponent lists with
/// prod_j (x^{p_j}-1) / prod_k (x^{q_k}-1) equal to the cyclotomic quotient,
/// and `m_const` is prod p_j^{p_j} / prod q_k^{q_k}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypergeometricData {
    #[serde(with = "frac_list_serde")]
    pub alpha: Vec<Frac>,
    #[serde(with = "frac_list_serde")]
    pub beta: Vec<Frac>,
    pub degree: usize,
    pub gamma_p: Vec<u64>,
    pub gamma_q: Vec<u64>,
    #[serde(with = "big_ratio_serde")]
    pub m_const: BigRational,
    pub lcm_den: u64,
}

mod frac_list_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Frac], s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(fraction_to_string).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Frac>, D::Error> {
        let strs: Vec<String> = Vec::deserialize(d)?;
        strs.iter()
            .map(|s| parse_fraction(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod big_ratio_serde {
    use super::*;
    use serde::{Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        let rep = if v.denom().is_one() {
            v.numer().to_string()
        } else {
            format!("{}/{}", v.numer(), v.denom())
        };
        rep.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_big_rational(&s).map_err(serde::de::Error::custom)
    }

    pub fn parse_big_rational(s: &str) -> Result<BigRational, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|e| format!("bad rational {s:?}: {e}"))?;
        let d = BigInt::from_str(d).map_err(|e| format!("bad rational {s:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(BigRational::new(n, d))
    }
}

/// Group reduced fractions in (0,1] into cyclotomic packets: a multiset is a
/// union of complete packets {b/n : gcd(b,n)=1} iff for every denominator n
/// each coprime numerator occurs with the same multiplicity. Returns the map
/// n -> multiplicity.
fn cyclotomic_levels(list: &[Frac], side: &str) -> Result<BTreeMap<u64, u64>, CoreError> {
    let mut counts: BTreeMap<u64, BTreeMap<u64, u64>> = BTreeMap::new();
    for f in list {
        let n = *f.denom() as u64;
        let a = f.numer().rem_euclid(*f.denom()) as u64; // 1 == 1/1 maps to numerator 0 mod 1
        *counts.entry(n).or_default().entry(a).or_default() += 1;
    }
    let mut levels = BTreeMap::new();
    for (n, nums) in counts {
        let phi = (1..=n).filter(|b| num_integer::gcd(*b, n) == 1).count() as u64;
        let total: u64 = nums.values().sum();
        let mult = total / phi;
        let complete = total % phi == 0
            && (1..=n)
                .filter(|b| num_integer::gcd(*b, n) == 1)
                .all(|b| nums.get(&(b % n)).copied().unwrap_or(0) == mult);
        if !complete {
            return Err(CoreError::NotCyclotomic(format!(
                "{side} packet at denominator {n} is incomplete"
            )));
        }
        levels.insert(n, mult);
    }
    Ok(levels)
}

/// Minimal gamma vectors for a signed multiset of cyclotomic levels, by
/// repeatedly cancelling the largest outstanding level against x^n - 1.
fn gamma_from_levels(
    alpha_levels: &BTreeMap<u64, u64>,
    beta_levels: &BTreeMap<u64, u64>,
) -> (Vec<u64>, Vec<u64>) {
    let mut c: BTreeMap<u64, i64> = BTreeMap::new();
    for (&n, &m) in alpha_levels {
        *c.entry(n).or_default() += m as i64;
    }
    for (&n, &m) in beta_levels {
        *c.entry(n).or_default() -= m as i64;
    }
    let mut p = Vec::new();
    let mut q = Vec::new();
    loop {
        let Some((&n, &v)) = c.iter().rev().find(|(_, &v)| v != 0) else {
            break;
        };
        if v > 0 {
            for _ in 0..v {
                p.push(n);
            }
        } else {
            for _ in 0..-v {
                q.push(n);
            }
        }
        for d in divisors(n) {
            *c.entry(d).or_default() -= v;
        }
    }
    p.sort_unstable_by(|a, b| b.cmp(a));
    q.sort_unstable_by(|a, b| b.cmp(a));
    (p, q)
}

impl HypergeometricData {
    /// Validate parameter lists and derive gamma vectors and M.
    pub fn parse(alpha_spec: &[Frac], beta_spec: &[Frac]) -> Result<Self, CoreError> {
        if alpha_spec.is_empty() || alpha_spec.len() != beta_spec.len() {
            return Err(CoreError::LengthMismatch);
        }
        let mut alpha = alpha_spec.to_vec();
        let mut beta = beta_spec.to_vec();
        alpha.sort();
        beta.sort();
        for f in alpha.iter().chain(beta.iter()) {
            if *f <= Frac::zero() || *f > Frac::one() {
                return Err(CoreError::InvalidParameter(format!(
                    "parameter {} outside (0,1]",
                    fraction_to_string(f)
                )));
            }
        }
        if !beta.contains(&Frac::one()) {
            return Err(CoreError::InvalidParameter("beta must contain 1".into()));
        }
        for a in &alpha {
            if beta.contains(a) {
                return Err(CoreError::Overlap(fraction_to_string(a)));
            }
        }
        let alpha_levels = cyclotomic_levels(&alpha, "alpha")?;
        let beta_levels = cyclotomic_levels(&beta, "beta")?;
        let (gamma_p, gamma_q) = gamma_from_levels(&alpha_levels, &beta_levels);

        // exact check: prod (x^{p_j}-1) * R_beta == prod (x^{q_k}-1) * R_alpha
        let r_alpha = levels_poly(&alpha_levels);
        let r_beta = levels_poly(&beta_levels);
        let mut a_poly = vec![BigInt::one()];
        for &pj in &gamma_p {
            a_poly = zp_mul(&a_poly, &zp_xn_minus_1(pj));
        }
        let mut b_poly = vec![BigInt::one()];
        for &qk in &gamma_q {
            b_poly = zp_mul(&b_poly, &zp_xn_minus_1(qk));
        }
        debug_assert_eq!(zp_mul(&a_poly, &r_beta), zp_mul(&b_poly, &r_alpha));

        let mut m_const = BigRational::one();
        for &pj in &gamma_p {
            m_const *= BigRational::from(BigInt::from(pj)).pow(pj as i32);
        }
        for &qk in &gamma_q {
            m_const /= BigRational::from(BigInt::from(qk)).pow(qk as i32);
        }
        let lcm_den = alpha
            .iter()
            .chain(beta.iter())
            .fold(1u64, |l, f| num_integer::lcm(l, *f.denom() as u64));
        Ok(HypergeometricData {
            degree: alpha.len(),
            alpha,
            beta,
            gamma_p,
            gamma_q,
            m_const,
            lcm_den,
        })
    }

    pub fn parse_strs(alpha: &str, beta: &str) -> Result<Self, CoreError> {
        Ok(Self::parse(&parse_fraction_list(alpha)?, &parse_fraction_list(beta)?)?)
    }

    /// The gamma vectors (descending, disjoint).
    pub fn gamma_vectors(&self) -> (&[u64], &[u64]) {
        (&self.gamma_p, &self.gamma_q)
    }

    /// Exact polynomial identity between the cyclotomic quotient and the
    /// gamma-vector quotient; used by tests and by `parse` in debug builds.
    pub fn verify_gamma_identity(&self) -> bool {
        let alpha_levels = cyclotomic_levels(&self.alpha, "alpha").unwrap();
        let beta_levels = cyclotomic_levels(&self.beta, "beta").unwrap();
        let r_alpha = levels_poly(&alpha_levels);
        let r_beta = levels_poly(&beta_levels);
        let mut a_poly = vec![BigInt::one()];
        for &pj in &self.gamma_p {
            a_poly = zp_mul(&a_poly, &zp_xn_minus_1(pj));
        }
        let mut b_poly = vec![BigInt::one()];
        for &qk in &self.gamma_q {
            b_poly = zp_mul(&b_poly, &zp_xn_minus_1(qk));
        }
        zp_mul(&a_poly, &r_beta) == zp_mul(&b_poly, &r_alpha)
    }

    pub fn alpha_string(&self) -> String {
        self.alpha.iter().map(fraction_to_string).collect::<Vec<_>>().join(",")
    }

    pub fn beta_string(&self) -> String {
        self.beta.iter().map(fraction_to_string).collect::<Vec<_>>().join(",")
    }
}

fn levels_poly(levels: &BTreeMap<u64, u64>) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for (&n, &m) in levels {
        let phi = cyclotomic(n);
        for _ in 0..m {
            out = zp_mul(&out, &phi);
        }
    }
    out
}

impl fmt::Display for HypergeometricData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({}; {})", self.alpha_string(), self.beta_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fr(s: &str) -> Frac {
        parse_fraction(s).unwrap()
    }

    #[test]
    fn k3_data() {
        let d = HypergeometricData::parse_strs("1/2,1/4,3/4", "1,1,1").unwrap();
        assert_eq!(d.gamma_p, vec![4]);
        assert_eq!(d.gamma_q, vec![1, 1, 1, 1]);
        assert_eq!(d.m_const, BigRational::from(BigInt::from(256)));
        assert_eq!(d.lcm_den, 4);
        assert!(d.verify_gamma_identity());
    }

    #[test]
    fn sextic_data() {
        let d = HypergeometricData::parse_strs("1/2,1/3,2/3,1/6,5/6", "1,1,1,1,1").unwrap();
        assert_eq!(d.gamma_p, vec![6]);
        assert_eq!(d.gamma_q, vec![1; 6]);
        assert_eq!(d.m_const, BigRational::from(BigInt::from(46656u64)));
        assert_eq!(d.lcm_den, 6);
    }

    #[test]
    fn half_to_the_five() {
        let d = HypergeometricData::parse_strs("1/2,1/2,1/2,1/2,1/2", "1,1,1,1,1").unwrap();
        assert_eq!(d.gamma_p, vec![2; 5]);
        assert_eq!(d.gamma_q, vec![1; 10]);
        assert_eq!(d.m_const, BigRational::from(BigInt::from(1024)));
        assert!(d.verify_gamma_identity());
    }

    #[test]
    fn fifth_roots_with_half() {
        let d = HypergeometricData::parse_strs("1/5,2/5,3/5,4/5,1/2", "1,1,1,1,1").unwrap();
        assert_eq!(d.gamma_p, vec![5, 2]);
        assert_eq!(d.gamma_q, vec![1; 7]);
        assert_eq!(d.m_const, BigRational::from(BigInt::from(5u64.pow(5) * 4)));
        assert!(d.verify_gamma_identity());
    }

    #[test]
    fn rejects_incomplete_packet() {
        let err = HypergeometricData::parse_strs("1/4", "1").unwrap_err();
        assert!(matches!(err, CoreError::NotCyclotomic(_)));
    }

    #[test]
    fn rejects_overlap() {
        let err = HypergeometricData::parse_strs("1,1/2", "1,1").unwrap_err();
        assert!(matches!(err, CoreError::Overlap(_)));
    }

    #[test]
    fn rejects_length_mismatch() {
        let err = HypergeometricData::parse(&[fr("1/2")], &[]).unwrap_err();
        assert!(matches!(err, CoreError::LengthMismatch));
    }

    #[test]
    fn table1_rows_all_parse_with_consistent_m() {
        for row in crate::tables::table1_rows() {
            let d = row.data().unwrap();
            assert!(d.verify_gamma_identity(), "row {} gamma identity", row.id);
            let mut m = BigRational::one();
            for &p in &d.gamma_p {
                m *= BigRational::from(BigInt::from(p)).pow(p as i32);
            }
            for &q in &d.gamma_q {
                m /= BigRational::from(BigInt::from(q)).pow(q as i32);
            }
            assert_eq!(m, d.m_const, "row {} M", row.id);
        }
    }
}

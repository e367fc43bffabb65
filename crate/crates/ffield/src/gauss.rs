//! Gauss-sum tables over F_q: g(m) = sum_x omega(x)^m psi(Tr x) for
//! m = 0..q-2, at a chosen fixed-point precision. The DFT method evaluates
//! the length-(q-1) transform of k -> psi(Tr g^k); the naive method sums
//! directly and serves as the dual-path oracle.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use thiserror::Error;

use crate::fft::{dft_arbitrary, dft_naive};
use crate::fixed::{div_by_small, expi, pi, Cx, Fx};
use crate::field::FieldContext;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaussMethod {
    Naive,
    Dft,
}

#[derive(Debug, Error)]
pub enum GaussError {
    #[error("precision must be at least 64 bits, got {0}")]
    PrecisionTooLow(u32),
    #[error("precision {0} bits exceeds the supported maximum")]
    PrecisionTooHigh(u32),
}

/// Fraction-bit buckets and their limb counts.
pub const PRECISION_LADDER: &[(u32, usize)] = &[(192, 4), (256, 5), (320, 6), (448, 8), (704, 12)];

pub fn limbs_for_bits(bits: u32) -> Result<(u32, usize), GaussError> {
    if bits < 64 {
        return Err(GaussError::PrecisionTooLow(bits));
    }
    for &(b, l) in PRECISION_LADDER {
        if bits <= b {
            return Ok((b, l));
        }
    }
    Err(GaussError::PrecisionTooHigh(bits))
}

/// Default working precision for a degree-d weight-w computation over F_q.
pub fn default_precision_bits(d: usize, w: u32, q: u64) -> u32 {
    let need = ((d as f64 * w as f64 / 2.0) * (q as f64).log2()).ceil() as u32 + 64;
    need.max(192)
}

#[derive(Debug)]
pub enum CxTable {
    L4(Vec<Cx<4>>),
    L5(Vec<Cx<5>>),
    L6(Vec<Cx<6>>),
    L8(Vec<Cx<8>>),
    L12(Vec<Cx<12>>),
}

impl CxTable {
    pub fn len(&self) -> usize {
        match self {
            CxTable::L4(v) => v.len(),
            CxTable::L5(v) => v.len(),
            CxTable::L6(v) => v.len(),
            CxTable::L8(v) => v.len(),
            CxTable::L12(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get_c64(&self, idx: usize) -> (f64, f64) {
        match self {
            CxTable::L4(v) => v[idx].to_c64(),
            CxTable::L5(v) => v[idx].to_c64(),
            CxTable::L6(v) => v[idx].to_c64(),
            CxTable::L8(v) => v[idx].to_c64(),
            CxTable::L12(v) => v[idx].to_c64(),
        }
    }

    pub fn bytes(&self) -> usize {
        let per = match self {
            CxTable::L4(_) => 64,
            CxTable::L5(_) => 80,
            CxTable::L6(_) => 96,
            CxTable::L8(_) => 128,
            CxTable::L12(_) => 192,
        };
        self.len() * per + 2 * per
    }

    /// | self[i] - other[j] | computed in fixed point (readout of the small
    /// difference in f64 is then harmless).
    pub fn diff_abs(&self, i: usize, other: &CxTable, j: usize) -> f64 {
        match (self, other) {
            (CxTable::L4(a), CxTable::L4(b)) => cx_dist(&a[i], &b[j]),
            (CxTable::L5(a), CxTable::L5(b)) => cx_dist(&a[i], &b[j]),
            (CxTable::L6(a), CxTable::L6(b)) => cx_dist(&a[i], &b[j]),
            (CxTable::L8(a), CxTable::L8(b)) => cx_dist(&a[i], &b[j]),
            (CxTable::L12(a), CxTable::L12(b)) => cx_dist(&a[i], &b[j]),
            _ => panic!("mismatched table precisions"),
        }
    }

    /// | |self[i]|^2 - q |, in fixed point.
    pub fn modulus_defect(&self, i: usize, q: u64) -> f64 {
        with_cx_table!(self, v, {
            let n = v[i].norm_sqr();
            n.sub(&crate::fixed::Fx::from_u64(q)).to_f64().abs()
        })
    }

    /// | self[i] * self[j] - sign * q |, in fixed point.
    pub fn pair_product_defect(&self, i: usize, j: usize, sign: i64, q: u64) -> f64 {
        with_cx_table!(self, v, {
            let prod = v[i].mul(&v[j]);
            let target = crate::fixed::Fx::from_i64(sign * q as i64);
            let dre = prod.re.sub(&target).to_f64();
            let dim = prod.im.to_f64();
            (dre * dre + dim * dim).sqrt()
        })
    }
}

fn cx_dist<const L: usize>(a: &Cx<L>, b: &Cx<L>) -> f64 {
    let d = a.sub(b);
    let dre = d.re.to_f64();
    let dim = d.im.to_f64();
    (dre * dre + dim * dim).sqrt()
}

/// Dispatch a block over the concrete limb width of a table.
#[macro_export]
macro_rules! with_cx_table {
    ($table:expr, $vals:ident, $body:expr) => {
        match $table {
            $crate::gauss::CxTable::L4($vals) => $body,
            $crate::gauss::CxTable::L5($vals) => $body,
            $crate::gauss::CxTable::L6($vals) => $body,
            $crate::gauss::CxTable::L8($vals) => $body,
            $crate::gauss::CxTable::L12($vals) => $body,
        }
    };
}

#[derive(Debug)]
pub struct GaussTable {
    pub ctx: Arc<FieldContext>,
    pub precision_bits: u32,
    pub method: GaussMethod,
    pub values: CxTable,
}

fn build_values<const L: usize>(ctx: &FieldContext, method: GaussMethod) -> Vec<Cx<L>> {
    let q = ctx.q;
    let p = ctx.p;
    let n = (q - 1) as usize;
    // psi(Tr g^k) as p-th roots of unity; two-level power table so each
    // element costs one multiply
    let seq: Vec<Cx<L>> = if p == 2 {
        (0..n)
            .map(|k| {
                let t = ctx.trace(ctx.exp(k as u64));
                if t == 0 {
                    Cx::one()
                } else {
                    Cx::one().neg()
                }
            })
            .collect()
    } else {
        let theta = div_by_small(&pi::<L>().add(&pi::<L>()), p);
        let zeta = expi(&theta);
        let s = (p as f64).sqrt().ceil() as u64;
        let mut lo = Vec::with_capacity(s as usize);
        let mut cur = Cx::<L>::one();
        for _ in 0..s {
            lo.push(cur);
            cur = cur.mul(&zeta);
        }
        let zeta_s = cur; // zeta^s
        let mut hi = Vec::with_capacity((p / s + 2) as usize);
        let mut cur = Cx::<L>::one();
        for _ in 0..(p / s + 2) {
            hi.push(cur);
            cur = cur.mul(&zeta_s);
        }
        (0..n)
            .map(|k| {
                let t = ctx.trace(ctx.exp(k as u64));
                hi[(t / s) as usize].mul(&lo[(t % s) as usize])
            })
            .collect()
    };
    match method {
        GaussMethod::Dft => dft_arbitrary(&seq, true),
        GaussMethod::Naive => dft_naive(&seq, true),
    }
}

impl GaussTable {
    pub fn build(ctx: Arc<FieldContext>, precision_bits: u32, method: GaussMethod) -> Result<Self, GaussError> {
        let (bits, limbs) = limbs_for_bits(precision_bits)?;
        let values = match limbs {
            4 => CxTable::L4(build_values::<4>(&ctx, method)),
            5 => CxTable::L5(build_values::<5>(&ctx, method)),
            6 => CxTable::L6(build_values::<6>(&ctx, method)),
            8 => CxTable::L8(build_values::<8>(&ctx, method)),
            _ => CxTable::L12(build_values::<12>(&ctx, method)),
        };
        let table = GaussTable { ctx, precision_bits: bits, method, values };
        debug_assert!(table.g0_deviation() < 1e-6, "g(0) must be -1");
        Ok(table)
    }

    /// |g(0) - (-1)|, a cheap sanity probe.
    pub fn g0_deviation(&self) -> f64 {
        let (re, im) = self.values.get_c64(0);
        ((re + 1.0).powi(2) + im.powi(2)).sqrt()
    }

    /// max_m | |g(m)|^2 - q | / q over nonzero m (full scan; test use).
    pub fn modulus_deviation(&self) -> f64 {
        let q = self.ctx.q;
        let mut worst = 0.0f64;
        for m in 1..self.values.len() {
            worst = worst.max(self.values.modulus_defect(m, q) / q as f64);
        }
        worst
    }

    /// Reflection defect: max_m |g(m) g(-m) - omega(-1)^m q| / q.
    pub fn reflection_deviation(&self) -> f64 {
        let n = self.values.len();
        let q = self.ctx.q;
        // omega(-1)^m: -1 = g^{(q-1)/2} in odd characteristic
        let mut worst = 0.0f64;
        for m in 1..n {
            let sign = if q % 2 == 1 && (((q - 1) / 2) * m as u64) % (q - 1) != 0 { -1 } else { 1 };
            let dev = self.values.pair_product_defect(m, n - m, sign, q) / q as f64;
            worst = worst.max(dev);
        }
        worst
    }
}

type CacheKey = (u64, u32, u32, u64); // (p, f, bits bucket, seed)

struct GaussCache {
    map: HashMap<CacheKey, Arc<GaussTable>>,
    order: Vec<CacheKey>,
    bytes: usize,
}

static CACHE: Lazy<Mutex<GaussCache>> =
    Lazy::new(|| Mutex::new(GaussCache { map: HashMap::new(), order: Vec::new(), bytes: 0 }));

const CACHE_BUDGET: usize = 1 << 31; // ~2 GiB of table payload

/// Build (or fetch) the shared DFT Gauss table for F_{p^f} at the requested
/// precision, with the default deterministic field seed.
pub fn shared_gauss_table(p: u64, f: u32, precision_bits: u32) -> Result<Arc<GaussTable>, String> {
    shared_gauss_table_seeded(p, f, precision_bits, crate::field::DEFAULT_SEED)
}

pub fn shared_gauss_table_seeded(
    p: u64,
    f: u32,
    precision_bits: u32,
    seed: u64,
) -> Result<Arc<GaussTable>, String> {
    let (bits, _) = limbs_for_bits(precision_bits).map_err(|e| e.to_string())?;
    let key = (p, f, bits, seed);
    if let Some(t) = CACHE.lock().unwrap().map.get(&key) {
        return Ok(t.clone());
    }
    let ctx = FieldContext::build_with(p, f, seed, crate::field::DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
    let table = GaussTable::build(Arc::new(ctx), bits, GaussMethod::Dft).map_err(|e| e.to_string())?;
    let table = Arc::new(table);
    let mut cache = CACHE.lock().unwrap();
    let sz = table.values.bytes() + 12 * table.ctx.q as usize;
    while cache.bytes + sz > CACHE_BUDGET && !cache.order.is_empty() {
        let victim = cache.order.remove(0);
        if let Some(t) = cache.map.remove(&victim) {
            cache.bytes -= t.values.bytes() + 12 * t.ctx.q as usize;
        }
    }
    cache.map.insert(key, table.clone());
    cache.order.push(key);
    cache.bytes += sz;
    Ok(table)
}

/// Evaluate e^{2 pi i k / n} tables on demand for sum kernels.
pub fn root_of_unity<const L: usize>(k: u64, n: u64) -> Cx<L> {
    let two_pi = pi::<L>().add(&pi::<L>());
    let theta = div_by_small(&two_pi, n);
    // theta * k via repeated doubling to stay exact enough
    let mut acc = Fx::<L>::ZERO;
    let mut base = theta;
    let mut kk = k % n;
    while kk > 0 {
        if kk & 1 == 1 {
            acc = acc.add(&base);
        }
        base = base.add(&base);
        kk >>= 1;
    }
    expi(&acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(p: u64, f: u32, method: GaussMethod) -> GaussTable {
        let ctx = FieldContext::build(p, f).unwrap();
        GaussTable::build(Arc::new(ctx), 192, method).unwrap()
    }

    #[test]
    fn g0_is_minus_one_and_modulus_q() {
        // |g(m)|^2 = q to relative error < 2^{-bits/2}
        let tol = 2.0f64.powi(-96);
        for (p, f) in [(5u64, 1u32), (7, 1), (3, 2), (13, 1), (2, 3)] {
            for method in [GaussMethod::Naive, GaussMethod::Dft] {
                let t = table(p, f, method);
                assert!(t.g0_deviation() < 1e-40, "g(0) for q={} {:?}", t.ctx.q, method);
                assert!(t.modulus_deviation() < tol, "|g|^2 for q={} {:?}", t.ctx.q, method);
            }
        }
    }

    #[test]
    fn naive_and_dft_agree_up_to_q49() {
        // dual-path tolerance: 2^{-(precisionBits - 10)}
        let tol = 2.0f64.powi(-182);
        let mut checked = 0;
        for q in 3u64..=49 {
            // prime powers only
            let (p, f) = match crate::smallq(q) {
                Some(pf) => pf,
                None => continue,
            };
            let ctx = Arc::new(FieldContext::build(p, f).unwrap());
            let a = GaussTable::build(ctx.clone(), 192, GaussMethod::Naive).unwrap();
            let b = GaussTable::build(ctx, 192, GaussMethod::Dft).unwrap();
            let mut worst = 0.0f64;
            for m in 0..a.values.len() {
                worst = worst.max(a.values.diff_abs(m, &b.values, m));
            }
            assert!(worst < tol, "q={q} worst={worst:e}");
            checked += 1;
        }
        assert!(checked >= 15);
    }

    #[test]
    fn reflection_identity() {
        for (p, f) in [(13u64, 1u32), (3, 2), (7, 2)] {
            let t = table(p, f, GaussMethod::Dft);
            assert!(t.reflection_deviation() < 2.0f64.powi(-96), "q = {}", t.ctx.q);
        }
    }

    #[test]
    fn shared_cache_returns_same_table() {
        let a = shared_gauss_table(11, 1, 192).unwrap();
        let b = shared_gauss_table(11, 1, 192).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}

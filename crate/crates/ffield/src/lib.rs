//! Finite-field contexts, fixed-point complex arithmetic, arbitrary-length
//! DFTs and Gauss-sum tables: the numerical kernel behind the finite-field
//! hypergeometric sums.

pub mod fft;
pub mod field;
pub mod fixed;
pub mod gauss;

pub use field::{FieldContext, FieldError, DEFAULT_SEED, DEFAULT_SIZE_CAP};
pub use fixed::{Cx, Fx};
pub use gauss::{
    default_precision_bits, limbs_for_bits, shared_gauss_table, shared_gauss_table_seeded, CxTable,
    GaussError, GaussMethod, GaussTable,
};

/// (p, f) for a prime power q, if it is one.
pub fn smallq(q: u64) -> Option<(u64, u32)> {
    let fac = hgm_core::arith::factor_u64(q);
    if fac.len() == 1 {
        Some((fac[0].0, fac[0].1))
    } else {
        None
    }
}

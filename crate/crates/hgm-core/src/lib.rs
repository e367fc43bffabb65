//! Hypergeometric data over Q: parameter validation, gamma vectors, series
//! coefficients, the hypergeometric ODE check, and prime classification for a
//! specialization point.
//!
//! Everything in this crate is exact arithmetic (integers and rationals); the
//! analytic and finite-field layers live in sibling crates.

pub mod arith;
pub mod data;
pub mod error;
pub mod euler;
pub mod point;
pub mod polyx;
pub mod series;
pub mod tables;

pub use data::{parse_fraction, parse_fraction_list, Frac, HypergeometricData};
pub use error::CoreError;
pub use euler::{Flags, LocalEulerFactor, Provenance};
pub use point::SpecializationPoint;
pub use series::SeriesTruncation;
pub use tables::{table1_rows, Table1Row};

pub type BigRational = num_rational::BigRational;
pub type BigInt = num_bigint::BigInt;

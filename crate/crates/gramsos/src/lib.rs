//! Exact machinery for studying strictly positive polynomials on the boundary
//! of the sum-of-squares cone: rational polynomial algebra, Hilbert functions
//! of graded ideals, divisor-count bounds, Gram-spectrahedron parametrization,
//! a small dense semidefinite solver, and exact dual certificates.

pub mod analyze;
pub mod bounds;
pub mod gram;
pub mod ideals;
pub mod matrix;
pub mod monomial;
pub mod poly;
pub mod registry;
pub mod sdp;

pub use matrix::RatMatrix;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;

use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;
pub type Int = num_bigint::BigInt;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(Int::from(p))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    Degree { expected: usize, got: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("non-homogeneous polynomial: found terms of degree {0} and {1}")]
    NonHomogeneous(usize, usize),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("containment error: {0}")]
    Containment(String),
    #[error("matrix is not positive semidefinite: {0}")]
    NotPsd(String),
    #[error("certificate search failed: {0}")]
    SearchFailed(String),
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
    #[error("solver failure: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Binomial coefficient as an exact `usize` (panics on overflow).
pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// dim H_{n,d}: number of monomials of degree `d` in `n` variables.
pub fn dim_forms(n: usize, d: usize) -> usize {
    binom(n + d - 1, d)
}

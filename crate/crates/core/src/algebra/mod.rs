//! Exact arithmetic substrate: sparse integer polynomials, cyclotomic field
//! elements, and the special number sequences consumed by the wave formulas.

pub mod cyclotomic;
pub mod poly;
pub mod special;

pub use cyclotomic::{euler_phi, CyclotomicNumber};
pub use poly::{cyclotomic_polynomial, SparseIntPolynomial};
pub use special::{bernoulli_number, binomial, euler_at_zero, factorial, frobenius_carlitz, frobenius_carlitz_seq};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cyclotomic order mismatch: {left} vs {right}")]
    OrderMismatch { left: u64, right: u64 },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("H_n(x) is singular at x = 1")]
    SingularAtOne,
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("polynomial divisor must be monic up to sign")]
    NonMonicDivisor,
}

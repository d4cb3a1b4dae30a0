//! Exact-arithmetic analysis of numerical semigroups.
//!
//! The crate computes, with zero numerical error:
//! - semigroup invariants (gaps, Frobenius number, genus, Apéry sets) and
//!   classification flags ([`semigroup`]);
//! - the Hilbert-series numerator `Q(z)` and per-kind syzygy degree tables,
//!   plus closed-form numerators for the special families ([`hilbert`]);
//! - the restricted partition function, both by dynamic programming and by
//!   evaluating the Sylvester-wave quasipolynomials in cyclotomic arithmetic
//!   ([`sylvester`]);
//! - the polynomial and quasipolynomial identity families satisfied by the
//!   syzygy degrees, each verified exactly ([`identity`]).

pub mod algebra;
pub mod hilbert;
pub mod identity;
pub mod semigroup;
pub mod sylvester;

pub use algebra::{AlgebraError, CyclotomicNumber, SparseIntPolynomial};
pub use hilbert::{HilbertError, SyzygyProvenance, SyzygyTable};
pub use identity::{ExactValue, Family, IdentityCheck, IdentityReport, Status};
pub use semigroup::{
    apery_set, classify, membership, profile, validate_generators, ClassificationFlags,
    GeneratorTuple, SemigroupError, SemigroupProfile, TelescopicStatus,
};

/// Arbitrary-precision integer used throughout.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used throughout.
pub type Rational = num_rational::BigRational;

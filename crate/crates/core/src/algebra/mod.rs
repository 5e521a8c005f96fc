//! Exact scalars: finite fields, polynomials over them, rationals and
//! cyclotomic numbers, plus word-sized prime-field linear algebra.

pub mod cyclotomic;
pub mod fq;
pub mod modp;
pub mod poly;

pub use cyclotomic::CyclotomicNumber;
pub use fq::{FieldElement, FqField};

/// Arbitrary-precision rational, always reduced with positive denominator.
pub type Rational = num_rational::BigRational;

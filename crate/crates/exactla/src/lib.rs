//! Exact linear algebra over the rationals, plus Laurent polynomials in one
//! variable with integer coefficients.
//!
//! Everything here is exact. Ranks, kernels and column-space comparisons are
//! computed by fraction-free elimination on primitive integer rows (each row
//! is rescaled by the gcd of its entries after every elimination step), so no
//! floating point and no tolerance ever enters a result.
//!
//! ```
//! use exactla::{RationalMatrix, q};
//! let m = RationalMatrix::from_rows(&[vec![q(1), q(2)], vec![q(2), q(4)]]);
//! assert_eq!(m.rank(), 1);
//! assert_eq!(m.kernel_basis().len(), 1);
//! ```

mod echelon;
mod laurent;
mod matrix;

pub use echelon::Echelon;
pub use laurent::LaurentPoly;
pub use matrix::RationalMatrix;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

/// Errors raised by shape-sensitive operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: {what} ({left} vs {right})")]
    DimensionMismatch { what: &'static str, left: usize, right: usize },
}

/// Shorthand for the rational number `n/1`.
pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational number `n/d`. Panics if `d == 0`.
pub fn qf(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

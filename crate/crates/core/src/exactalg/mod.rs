//! Exact arithmetic kernel: rationals, truncated power series, the
//! polynomial expression parser, rank over the rationals and Smith normal
//! form over the integers.

mod matrix;
mod parse;
mod poly;
mod series;
mod snf;

pub use matrix::{nullspace_rational, rank_rational, EchelonBasis, IntMatrix, Matrix, RatMatrix};
pub use parse::parse_poly;
pub use poly::LaurentPoly;
pub(crate) use poly::push_sign;
pub use series::TruncSeries;
pub use snf::{smith_normal_form, SnfResult};

use num_bigint::BigInt;

/// Arbitrary precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

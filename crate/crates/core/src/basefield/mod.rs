//! Base differential fields: exact arithmetic in ℚ and ℚ(t), polynomial
//! factorisation over ℚ, and the two field-level decision procedures used by
//! the Galois classification (derivative recognition and logarithmic
//! derivative recognition).

pub mod factor;
pub mod integrate;
pub mod poly;
pub mod ratfunc;

/// Exact rationals; `num_rational` keeps them reduced with positive denominator.
pub type Rational = num_rational::BigRational;

pub use integrate::{
    antiderivative_in_field, hermite_reduce, log_derivative_decompose,
    smallest_exponential_index, LogTerm,
};
pub use poly::Poly;
pub use ratfunc::{rf_derive, rf_normalize, FieldTag, RatFunc};

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

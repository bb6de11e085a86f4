//! Exact regularized summation calculus.
//!
//! The library orders the integers as `[0, 1, 2, ..., -2, -1]` (negative
//! numbers beyond infinity), defines generalized range sums with arbitrary
//! limits through generating functions, assigns regularized values to
//! divergent series and to limits of unbounded or oscillating sequences, and
//! computes Bernoulli numbers by eight mutually checking methods.
//!
//! Modules:
//! - [`exact`]: arbitrary-precision rationals, extended factorial `lambda(s)`
//!   with pole semantics, extended binomial coefficients
//! - [`zorder`]: the nonstandard order on the integers, segments `Z_{a,b}`,
//!   generalized range sums, the factorial product reflection
//! - [`poly`]: exact polynomials, indefinite (power-sum) and alternating
//!   summation, unit-interval integration, symmetric-function utilities
//! - [`bernoulli`]: the multi-method Bernoulli engine, composition and
//!   partition enumeration, the identity suite, the prime congruence
//! - [`limits`]: regularized limits of polynomial, alternating, spliced and
//!   trigonometric sequences; structured trig closed forms
//! - [`series`]: regularized sums of infinite series, dispatched by term
//!   class, with every value cross-checked through independent routes
//! - [`dsl`]: a small expression grammar that parses series and limit terms
//!   into their narrowest class

pub mod bernoulli;
pub mod dsl;
pub mod exact;
pub mod limits;
pub mod poly;
pub mod series;
pub mod zorder;

pub use exact::{binomial, ext_binomial, ext_factorial, rat, ExtFactorialValue, Rational};
pub use poly::Polynomial;

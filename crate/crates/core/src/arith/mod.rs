//! Exact arithmetic over the Laurent ring ℤ[q^{±1},t^{±1}] and the fraction
//! field ℚ(q,t).
//!
//! `QTPoly` is a sparse Laurent polynomial with rational coefficients.
//! `QTFraction` is a fully reduced fraction of two integer polynomials with
//! nonnegative exponents; any Laurent monomial prefactor is folded into the
//! pair by a joint exponent shift, so equality of values is equality of
//! representations.  `Character` is a ℤ-linear combination of monomials
//! (a torus character) with the plethystic Λ* map into ℚ(q,t).

mod character;
mod fraction;
pub(crate) mod gcd;
mod parse;
mod poly;

pub use character::Character;
pub use fraction::QTFraction;
pub use poly::QTPoly;

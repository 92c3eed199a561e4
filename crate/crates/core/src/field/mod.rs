//! Exact arithmetic in Q(zeta_N)(v1, ..., vm), valuations and multiplicative words.

pub mod elem;
pub mod gcd;
pub mod poly;
pub mod scalar;
pub mod valuation;
pub mod word;

pub use elem::{eval_poly, FieldElem};
pub use gcd::gcd;
pub use poly::{Monomial, Poly, Var};
pub use scalar::{rat, rat_frac, Rational, Scalar};
pub use valuation::{Center, Valuation};
pub use word::{BaseKey, Ctx, MultWord};

//! Sparse multivariate polynomials over exact fields.

mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_terms, ParseError};
pub use polynomial::{ring_arith, ArithOp, Polynomial};
pub use ring::Ring;

pub(crate) use ring::same_ring;

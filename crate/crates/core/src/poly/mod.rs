//! Multivariate polynomials over exact fields.

mod monomial;
mod parse;
mod polynomial;
mod ring;

use thiserror::Error;

pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use parse::{parse_polynomial, ParseError};
pub use polynomial::{canonical_tuple, random_homogeneous, Polynomial, Term};
pub use ring::{PolyRing, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings or orders")]
    RingMismatch,
    #[error("expected {expected} images, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("monomial order {0:?} is not valid for {1} variables")]
    InvalidOrder(MonomialOrder, usize),
    #[error("variable '{0}' has no image in the target ring")]
    UnmappedVariable(String),
}

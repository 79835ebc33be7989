//! Exact computer-algebra kernel for the algebra `S_n(A)` of one-sided
//! inverses of a polynomial ring: the ring obtained from `A[x_1..x_n]` by
//! adjoining commuting left inverses `y_i` of the generators
//! (`y_i x_i = 1`, while `x_i y_i != 1`).
//!
//! Everything is exact: coefficients are big integers, reduced rationals
//! or residues, normal forms are unique, and all linear algebra runs over
//! `Q` or `Z/p` with fraction-free elimination. Kernels are computed from
//! a truncated domain into an untruncated codomain, so reported kernel
//! vectors are genuine annihilators, not truncation artifacts.

use std::fmt;

pub mod action;
pub mod coherence;
pub mod division;
pub mod element;
pub mod expr;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod parallel;
pub mod resolution;
pub mod ring;
pub mod sample;
pub mod verify;

pub use element::{Element, LaurentPoly};
pub use monomial::{EIndex, Exp, Monomial};
pub use ring::{Coefficient, RingSpec};

/// Errors surfaced by the fallible operations of the crate.
///
/// Contract violations (mixing rings or dimensions inside arithmetic)
/// panic instead; they indicate caller bugs, not runtime conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Linear algebra requested over a ring that is not a field.
    FieldRequired(RingSpec),
    /// A modulus below 2 was supplied for a residue ring.
    InvalidModulus(u64),
    /// An operation restricted to `n = 1` was called with a larger `n`.
    UnivariateOnly(usize),
    /// A coefficient literal could not be parsed.
    BadCoefficient(String),
    /// A ring name could not be parsed.
    BadRing(String),
    /// Malformed element JSON.
    BadJson(String),
    /// Expression syntax error, with a byte offset into the input.
    Parse { position: usize, message: String },
    /// No quotient found below the degree bound.
    NotFoundUpToDegree(u32),
    /// The division problem has more than one solution at the truncation,
    /// so no canonical quotient exists (the divisor is not regular there).
    NonUniqueQuotient,
    /// A polynomial operand used `y` generators.
    NotAPolynomial(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldRequired(r) => {
                write!(f, "field required: ring {r} is not a field (use Q or Z/p with p prime)")
            }
            Error::InvalidModulus(m) => write!(f, "invalid modulus {m}: must be at least 2"),
            Error::UnivariateOnly(n) => {
                write!(f, "operation requires n = 1 (got n = {n})")
            }
            Error::BadCoefficient(s) => write!(f, "bad coefficient: {s}"),
            Error::BadRing(s) => write!(f, "unknown ring `{s}` (expected Z, Q or Zmod:<m>)"),
            Error::BadJson(s) => write!(f, "bad element JSON: {s}"),
            Error::Parse { position, message } => {
                write!(f, "syntax error at byte {position}: {message}")
            }
            Error::NotFoundUpToDegree(d) => {
                write!(f, "no solution found up to degree box {d}")
            }
            Error::NonUniqueQuotient => write!(f, "quotient is not unique at this truncation"),
            Error::NotAPolynomial(s) => {
                write!(f, "operand is not a polynomial in the x generators: {s}")
            }
        }
    }
}

impl std::error::Error for Error {}

//! Exact arithmetic for linear codes over `Z4` and over the 16-element ring
//! `Z4[u]/(u^2 - 1)`, written `a + bu` below.
//!
//! The crate covers the full pipeline from generator polynomials to verified
//! code parameters:
//!
//! * [`ring`] — arithmetic in `Z4` and in `a + bu`, element weights;
//! * [`poly`] — dense polynomials, quotient-ring products, the high-to-low
//!   coefficient-string notation used in code tables;
//! * [`factor`] — factorization of `x^n - 1` over `F2` and its Hensel lift to
//!   `Z4`, divisor triples;
//! * [`gray`] — the Gray map `a + bu -> (b, 2a + b)` and its relatives
//!   (interleaved variant, shifts, Nechaev permutation, binary Gray map);
//! * [`code`] — Howell canonical forms over `Z4`, code types, duals, spans of
//!   constacyclic codes;
//! * [`weight`] — exact minimum Lee/Euclidean weights by packed enumeration
//!   and low-weight scanning, parameter verification;
//! * [`search`] — the divisor-triple code constructions, search over all
//!   triple pairs, verification of embedded reference tables;
//! * [`tables`] — the embedded reference tables themselves.

pub mod code;
pub mod factor;
pub mod gray;
mod packed;
pub mod poly;
pub mod ring;
pub mod search;
pub mod tables;
pub mod weight;

pub use code::{RCode, Z4Code};
pub use factor::{factor_xn_minus_1, DivisorTriple, F2Poly, FactorSet};
pub use poly::{RPoly, Z4Poly};
pub use ring::{Ru, Z4};
pub use weight::{CodeParams, Metric, Verdict, WeightResult};

use std::fmt;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The element has no multiplicative inverse.
    NotAUnit(ring::Ru),
    /// A coefficient string contained a character outside `0..=3` and the
    /// `d^k` repetition shorthand.
    BadDigit(char),
    /// A coefficient string violated the grammar (for example `3^` with no
    /// repeat count).
    BadPolynomial(String),
    /// An element string did not match any of the forms `a`, `bu`, `a+bu`.
    BadElement(String),
    /// The construction requires an odd length.
    EvenLength(usize),
    /// Length exceeds what the implementation supports.
    TooLong { length: usize, max: usize },
    /// The lifted factorization failed its product check. This indicates a
    /// bug and is surfaced rather than ignored.
    LiftFailure(usize),
    /// The polynomial is not a subproduct of the factor set.
    NotADivisor(String),
    /// A vector length disagreed with the code length.
    LengthMismatch { expected: usize, got: usize },
    /// The vector length is not twice an odd number.
    BadLength(usize),
    /// The operation is undefined on the zero code.
    ZeroCode,
    /// The candidate space exceeds the configured budget. Carries the exact
    /// count so callers can report what a full check would cost.
    BudgetExceeded { candidates: u128, budget: u128 },
    /// A generator-rule template failed to parse.
    BadRule(String),
    /// Malformed reference-table data or row filter.
    BadTable(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotAUnit(x) => write!(f, "{x} is not a unit"),
            Error::BadDigit(c) => write!(f, "invalid coefficient digit {c:?}"),
            Error::BadPolynomial(s) => write!(f, "invalid polynomial string: {s}"),
            Error::BadElement(s) => write!(f, "invalid ring element: {s:?}"),
            Error::EvenLength(n) => write!(f, "length {n} is not odd"),
            Error::TooLong { length, max } => {
                write!(f, "length {length} exceeds supported maximum {max}")
            }
            Error::LiftFailure(n) => write!(f, "Hensel lift product check failed for n = {n}"),
            Error::NotADivisor(s) => write!(f, "{s} is not a divisor in the factor lattice"),
            Error::LengthMismatch { expected, got } => {
                write!(f, "vector length {got} does not match code length {expected}")
            }
            Error::BadLength(n) => write!(f, "vector length {n} is not twice an odd number"),
            Error::ZeroCode => write!(f, "operation undefined on the zero code"),
            Error::BudgetExceeded { candidates, budget } => {
                write!(f, "candidate space {candidates} exceeds budget {budget}")
            }
            Error::BadRule(s) => write!(f, "invalid generator rule: {s}"),
            Error::BadTable(s) => write!(f, "invalid table data: {s}"),
        }
    }
}

impl std::error::Error for Error {}

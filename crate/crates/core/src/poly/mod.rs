//! Exact polynomial arithmetic over prime fields, their extensions, Q and Z.

pub mod field;
pub mod groebner;
pub mod linalg;
pub mod multi;
pub mod resultant;
pub mod uni;

use thiserror::Error;

pub use field::{ExtField, Field, FiniteField, Integers, PrimeField, Rationals, Ring};
pub use groebner::{groebner_basis, GroebnerBasis, MonomialOrder, QuotientCount};
pub use linalg::Matrix;
pub use multi::{Monomial, MultiPoly};
pub use resultant::{binary_form_resultant, sylvester_resultant, univariate_resultant};
pub use uni::{squarefree_root_count, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("extension modulus must be monic of positive degree")]
    BadModulus,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division is not exact")]
    NotDivisible,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("characteristic {0} is not supported")]
    UnsupportedCharacteristic(u64),
    #[error("empty polynomial system")]
    EmptySystem,
    #[error("ideal is positive-dimensional")]
    PositiveDimensional,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

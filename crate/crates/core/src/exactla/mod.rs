//! Exact scalars and dense linear algebra over them.
//!
//! Everything downstream (Jacobian rings, the Hodge-theoretic maps, Koszul
//! complexes) reduces to rank and kernel computations done here. Two fields
//! are supported: [`PrimeField`] for fast runs and [`Rationals`] for audits.

mod field;
mod matrix;
mod subspace;

pub use field::{
    is_prime, parse_rational, rational_to_prime, Field, FieldSpec, PrimeField, Rationals,
    MIN_MODULUS,
};
pub use matrix::{determinant, inverse, rank, rref, rref_with, DenseMatrix};
pub use subspace::{kernel, kernel_with, project_to_quotient, quotient, QuotientSpace, Subspace};

//! Exact computer algebra for BC_N-graded Lie algebras coordinatized by the
//! quantum torus, their central extensions, and their Fock representations.

pub mod bcgraded;
pub mod error;
pub mod fock;
pub mod scalars;
pub mod glhat;
pub mod qtorus;
pub mod verify;
pub mod text;

pub use error::{Error, Result};
pub use scalars::{QField, QMode, QScalar};

/// Scalars with machine-word rational coefficients (overflow is checked).
pub type Scalar = QScalar<i64>;
/// The coefficient field matching [`Scalar`].
pub type Field = QField<i64>;
/// Scalars with arbitrary-precision coefficients.
pub type BigScalar = QScalar<num_bigint::BigInt>;
/// The coefficient field matching [`BigScalar`].
pub type BigField = QField<num_bigint::BigInt>;

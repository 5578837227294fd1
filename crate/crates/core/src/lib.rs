//! Exact symbolic engine for bicovariant differential calculi on FRT quantum
//! groups, with coefficients in the rational function field Q(q).

pub mod algebra;
pub mod bicomplex;
pub mod calculus;
pub mod checks;
pub mod error;
pub mod expr;
pub mod forms;
pub mod functionals;
pub mod linalg;
pub mod report;
pub mod rmatrix;
pub mod scalar;
pub mod session;

pub use error::{Error, Result};
pub use scalar::{LaurentPoly, Rational, Scalar};

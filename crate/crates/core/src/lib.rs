//! Pseudo-Hermitian su(2) two-level Hamiltonians, their phermionic
//! supersymmetric extension on a truncated Fock space, and the two dual
//! families of supercoherent states, with numerical checks of the algebra.

// `!(r <= tol)` is used on purpose so that NaN residuals fail.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod fock;
pub mod grassmann;
pub mod linalg;
pub mod phermion;
pub mod quadrature;
pub mod report;
pub mod sampling;
pub mod scs;
pub mod suites;
pub mod sweep;
pub mod su2;

pub use error::{Error, Result};

pub type C64 = num_complex::Complex64;

/// Tolerance for identities that hold exactly up to round-off on 2×2 matrices.
pub const EXACT_TOL: f64 = 1e-12;

/// Tolerance when two independent floating-point routes are compared.
pub const ROUTE_TOL: f64 = 1e-10;

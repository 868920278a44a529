//! Exact arithmetic for Hyperderivative Reed-Solomon (HRS) codes and their
//! Schur squares.
//!
//! The crate builds HRS codes `HRS_t(alpha, V, s)` over GF(p^m), computes the
//! dimension of their Schur squares by exact rank computation, evaluates the
//! closed-form determinants of the binomial-product matrix family that
//! controls those dimensions, and classifies generator matrices as
//! structured or random-like (the square distinguisher).
//!
//! Modules:
//! - [`gf`]: prime and extension fields with a canonical integer encoding.
//! - [`poly`]: univariate polynomials, binomial coefficients mod p, and the
//!   hyperderivative operator.
//! - [`matrix`]: dense matrices over GF(p^m) with exact rank / solve / det.
//! - [`hrs`]: HRS and GRS code construction, generator matrices, file format.
//! - [`schur`]: Schur products, square bases, square dimensions, and the
//!   distinguisher.
//! - [`detlab`]: the binomial-product matrix family, closed-form determinant
//!   evaluators, Cauchy's double alternant, coefficient-block solves, and
//!   the structured generating matrix of the Schur square.
//! - [`experiment`]: parameter records, bound formulas, the built-in
//!   reference table, and sweep enumerations.
//! - [`rng`]: the fixed deterministic PRNG used by every seeded operation.

pub mod detlab;
pub mod error;
pub mod experiment;
pub mod gf;
pub mod hrs;
pub mod matrix;
pub mod poly;
pub mod rng;
pub mod schur;

pub use error::{Error, Result};
pub use gf::{Elem, Field};
pub use hrs::CodeSpec;
pub use matrix::MatrixGF;

//! Right eigenvalues, stability and hyperstability of quaternion matrix
//! polynomials `P(λ) = Σ A_i λ^i`.
//!
//! Quaternion matrices are handled through their complex adjoint for
//! spectra and norms, and through a real `4n×4n` realification for an
//! independent singularity check.

pub mod cli;
pub mod io;
pub mod linalg;
pub mod matpoly;
pub mod multivar;
pub mod quat;
pub mod stability;

pub use linalg::{LinalgError, QuaternionMatrix};
pub use matpoly::{Answer, MatrixPolynomial, PolyError, ScalarQPolynomial, ScalarZero};
pub use multivar::{MultiPolynomial, Word};
pub use quat::{Quaternion, StandardEigenvalue};
pub use stability::{HyperStatus, HyperVerdict, Region, StabilityStatus, StabilityVerdict};

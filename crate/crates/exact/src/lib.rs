//! Exact arithmetic over towers of number fields.
//!
//! Provides number fields given as towers of simple extensions of `Q`,
//! univariate polynomials with complete factorization, dense matrices with
//! exact elimination, and certified Perron-Frobenius numerics.

pub mod eigen;
pub mod error;
pub mod expr;
pub mod factor;
pub mod field;
pub mod matrix;
pub mod numeric;
pub mod poly;
pub mod tower;

pub use eigen::dominant_eigenvalue_numeric;
pub use num_complex::Complex64;
pub use error::AlgebraError;
pub use factor::{factor as factor_polynomial, Factorization};
pub use field::{rat, FieldElement, NumberField, Rational, RootSelector};
pub use matrix::{EchelonBasis, Matrix};
pub use poly::Polynomial;
pub use tower::{absolutize, absolutize_simplified, field_adjoin, Absolutization, FieldMap};

//! Exact arithmetic substrate: scalars, sparse polynomials, matrices and
//! integer normal forms.

pub mod matrix;
pub mod num;
pub mod poly;
pub mod smith;

pub use matrix::{IntMatrix, PolyMatrix};
pub use num::{ExactInt, ExactRat};
pub use poly::{Monomial, Poly, Quotient, VarId};
pub use smith::{smith_normal_form, SmithDecomposition};

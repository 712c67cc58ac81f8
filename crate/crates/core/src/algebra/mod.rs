//! Exact scalars, dense matrices, multivariate polynomials and jets.

pub mod bareiss;
pub mod field;
pub mod jet;
pub mod matrix;
pub mod poly;
pub mod univariate;

pub use field::{check_prime, Context, Field, Fp, Q};
pub use jet::{jet_eval, JetPoly};
pub use matrix::{ExactMatrix, MatrixJson};
pub use poly::{monomials_of_degree, Algebra, Monomial, MultiPoly, TermJson};
pub use univariate::UniPoly;

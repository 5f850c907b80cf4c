//! Exact arithmetic substrate: Gaussian rationals, dense matrices, sparse
//! multivariate polynomials, truncated series and exact `LDLᵀ`.

pub mod gaussian;
pub mod json;
pub mod ldl;
pub mod matrix;
pub mod poly;
pub mod series;

pub use gaussian::{int, parse_rational, rat, GaussianRational};
pub use ldl::{ldlt, Definiteness, Ldl};
pub use matrix::{commutator, exp_nilpotent, DenseMatrix, Matrix, PolyMatrix, Scalar};
pub use poly::{Group, Monomial, MultiPoly, Truncation, Var};
pub use series::{factorial, pochhammer, series_exp, series_power, Exponent};

//! Exact scalars, polynomials and linear algebra.

pub mod linsolve;
pub mod poly;
pub mod rational;

pub use linsolve::{linear_solve, LinearSolution, Matrix, SparseEchelon};
pub use poly::{Monomial, ParamSpace, Poly};
/// Values for named parameters.
pub type Assignment = std::collections::BTreeMap<String, Rational>;

pub use rational::{int, parse_rational, rat, Rational};

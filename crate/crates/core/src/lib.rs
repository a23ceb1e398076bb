//! Exact structure-constant toolkit for filiform and quasi-filiform
//! nilpotent Lie algebras.

pub mod catalog;
pub mod derivations;
pub mod error;
pub mod exact;
pub mod gradation;
pub mod isomorphy;
pub mod liealg;

pub use error::{Error, Result};
pub use exact::{int, Assignment, linear_solve, parse_rational, rat, LinearSolution, Matrix, ParamSpace, Poly, Rational};
pub use liealg::{Algebra, JacobiReport, Table};
pub use gradation::{Filtration, GradedAlgebra, TypeInfo, TypeVector};
pub use catalog::{generate, ConstraintSet, Family, FamilySpec, GradedClass, Reading};
pub use derivations::{DerivationSpace, DiagonalDerivations};
pub use isomorphy::{Classification, Fingerprint};

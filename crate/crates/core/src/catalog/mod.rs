//! Generators for every catalogued family, the `a_ij` table and Jacobi
//! constraint extraction for the parametric families.

mod aij;
mod build;
mod constraints;
mod spec;
mod weights;

pub use aij::{aij_table, alpha_space, AijTable};
pub use build::{alpha_assignment, generate, generate_reading, Reading};
pub use constraints::{extract_constraints, ConstraintSet};
pub use spec::{Family, FamilySpec, GradedClass, Shape};
pub use weights::{claimed_weights, verify_claimed_weights, weight_space, WeightAudit, WeightClaim};

//! Inputs shared by the benchmarks.

use qflab_core::{generate, Algebra, FamilySpec};

pub fn catalog(spec: &str) -> Algebra {
    generate(&spec.parse::<FamilySpec>().expect("valid spec")).expect("catalog entry")
}

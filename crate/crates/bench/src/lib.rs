//! Inputs shared by the criterion benches.

use branchforge_core::{semigroup_from_generators, BranchSemigroup};

pub fn semigroup(gens: &[i64]) -> BranchSemigroup {
    semigroup_from_generators(gens).expect("bench corpus entries are valid")
}

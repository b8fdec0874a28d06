//! Exact computations around plane-branch singularities.
//!
//! * [`semigroup`]: the value semigroup Γ of a branch, its gaps, conductor,
//!   gcd ladder and the representations `n_i·β̄_i = Σ ℓ_j·β̄_j`.
//! * [`curve`]: the binomial equations of the monomial curve, its
//!   weighted-projective closure and the analysis at infinity.
//! * [`deformation`]: the graded `T^1`, a homogeneous basis, the G_m-equivariant
//!   miniversal family and the split of its base by weight sign.
//! * [`lattice`]: exact `F_q`-point counts of the index-0 affine Springer
//!   fiber through stable submodules of `k[[t]]/t^c`, stratified by
//!   Γ-semimodules, and the polynomial fit of those counts.

pub mod budget;
pub mod curve;
pub mod deformation;
pub mod error;
pub mod field;
pub mod lattice;
pub mod poly;
pub mod semigroup;

pub use budget::Budget;
pub use curve::{
    check_parametrization, compactify, curve_equations, infinity_chart, normalization_check,
    BinomialEquation, InfinityChart, WeightedProjectiveModel,
};
pub use deformation::{
    b0_condition, deform, homogenize_family, jacobian_columns, miniversal_family, t1_basis, weight_split,
    GradedColumn, MiniversalFamily, ProjectiveFamily, TangentBasis, WeightSplit,
};
pub use error::{Error, Result};
pub use field::FiniteField;
pub use lattice::{
    build_truncated_module, count_points, enumerate_semimodules, enumerate_stable_submodules, fit_signature,
    purity_signature, stratum_table, GammaSemimodule, PurityFlags, PuritySignature, StableSubmoduleSet,
    StrataByQ, StratumRow, TruncatedModule,
};
pub use semigroup::{
    contains, gcd_ladder, represent, semigroup_from_generators, semigroup_from_puiseux,
    validate_plane_branch, BranchSemigroup, GcdLadder, PuiseuxData, SemigroupInput, SubRepresentation,
    ValidationReport,
};

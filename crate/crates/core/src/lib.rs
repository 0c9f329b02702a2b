//! Numerical toolkit for bipartite quantum cones under C*-convex combinations.

pub mod cone;
pub mod cstar;
pub mod data;
mod error;
mod linalg;
pub mod random;
pub mod suites;
pub mod tensor;

pub use error::{Error, Result};
pub use linalg::C64;
pub use tensor::{
    kron, lift_product_to_target, op_schmidt_decompose, osr, partial_transpose, realign,
    schmidt_decompose, sr, BipartiteDims, CMat, CVec, OpSchmidtDecomp, SchmidtDecomp,
    DEFAULT_TOL,
};
pub use cone::{
    is_block_positive_heuristic, is_ppt, is_psd, is_separable_decidable, min_product_expectation,
    min_sr_k_expectation, Certificate, MembershipReport, SeesawConfig, Verdict,
};
pub use cstar::{
    apply, collapse_construction, complete_to_identity, conic_scale, embed_schmidt_k,
    random_family, validate, witness_conjugation, ConicCombination, FamilyRecipe, KrausFamily,
    Locality, Normalization,
};
pub use suites::{rerun_trial, run_suite, SuiteConfig, SuiteId, SuiteReport, SuiteStatus};

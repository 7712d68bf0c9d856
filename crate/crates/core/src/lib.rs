//! Certified bounds for the joint spectral radius of finite sets of complex
//! matrices, the multiplication-operator lift `X ↦ A·X·B`, and radicals and
//! quotients of the finite-dimensional algebras they generate.
//!
//! Every capability has a runnable program under `examples/`.

pub mod algebra;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod lift;
pub mod matrix;
pub mod set;

pub use algebra::{
    check_inessential, check_nilpotent_span, generated_subalgebra, hypocompact_radical,
    ideal_chain_monotonicity, jacobson_radical, quotient, rcq_membership, FdAlgebra, Ideal,
    QuotientAlgebra,
};
pub use bounds::{
    continuity_probe, lower_bound_r, refine, refine_with, upper_bound, verify_berger_wang,
    BoundsReport, RefineOptions,
};
pub use error::{Error, Result};
pub use lift::{check_pass_identities, lift_LR, lift_L, lift_R, lift_W, lift_set, LiftedOperator};
pub use matrix::{eigenvalues, kron, op_norm, spectral_radius, Matrix, NormKind, C64};
pub use set::{
    evaluate, leading_products, normalized_leading_sequence, set_norm, Enumerator, MatrixSet,
    ProductWord,
};

//! Mod-p cohomology of elementary abelian groups: Steenrod operations,
//! linear group actions, invariant rings and the averaging splitting.

mod algebra;
mod invariants;
mod matrix;
mod molien;
mod ops;

pub use algebra::{AlgebraPresentation, GradedElement, Monomial, MAX_RANK};
pub use invariants::{
    finite_generation_witness, fixed_space_basis, full_cohomology, invariant_basis, is_invariant, reynolds,
    reynolds_image_basis, theta_tilde, verify_coh_properties, verify_coh_properties_with, CohReport,
    DegreeCertificate, GenerationWitness, InvariantRing, PropertyCheck, Splitting, DEFAULT_MAX_DEGREE,
};
pub use matrix::{FpMatrix, MatrixGroup, MAX_MATRIX_GROUP_ORDER};
pub use molien::{molien_series, MAX_FIELD_SIZE};
pub use ops::{gl_action, steenrod, SteenrodOp};

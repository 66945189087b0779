//! Integer linear algebra and the Pimsner–Voiculescu computation of
//! `K_*(C(T³_θ) ⋊ Z_N)` for the orientable cyclic families.

mod fixture;
mod group;
mod homology;
mod matrix;
mod pv;
mod snf;
mod verify;

pub use fixture::{compare_with_fixture, displayed_matrix, fixture_labels, fixture_source, FixtureComparison};
pub use group::{kernel_cokernel, AbelianGroup};
pub use homology::{bieberbach_h1, compare_with_k0, holonomy, relation_matrix};
pub use matrix::IntMatrix;
pub use pv::{
    beta_star_matrix, images_source, parse_images, pv_solve, BetaStarData, IMAGES_B2, IMAGES_B3, IMAGES_B4, IMAGES_B6,
};
pub use snf::{divisor_chain_by_minors, smith_normal_form, SmithForm};
pub use verify::{
    element_trace_rows, fixture_check, implied_exotic_column, k_groups_from_elements, structural_checks,
    trace_row_checks, transport_checks, verify_beta_star, ElementKTheory, TraceTable,
};

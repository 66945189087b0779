//! Finite group actions on twisted tori.

mod action;
mod families;
mod scan;
mod spec;
mod word;

pub use action::{box_monomials, FiniteAction, GeneratorImage, GroupAction};
pub use families::Family;
pub use scan::{
    candidate_matrix, fixed_slots, free_slot, on_grid, published_table, render_pattern, scan_cocycles,
    scan_field, slot_name, ScanResult, SCAN_DEGREE, SLOTS,
};
pub use spec::ActionSpec;
pub use word::{parse_word, phase_source, Word};

//! Bound-strengthening heuristics: initial cuts from independent attacks and
//! a warm-start defender set built from a clique cover.

mod cover;
mod initial;
mod warm;

pub use cover::{clique_cover, clique_cover_dsatur, clique_cover_peo, CliqueCover, CoverMethod};
pub use initial::{cut_set_bound, greedy_mis, initial_cuts, InitialCutSet};
pub use warm::{baseline_cover_bound, warm_start, REPAIR_VISIT_BUDGET};

//! Finite-scale tools for the canonical model structure on Cat: isofibrations,
//! lifting problems, pushouts of categories, and a bounded small object
//! argument in set-diagram categories.

mod lifting;
mod pushout;
mod soa;

pub use lifting::{
    default_acyclic_cofibrations, default_cofibrations, find_unliftable, has_llp, has_rlp, is_acyclic_fibration,
    is_injective_on_objects, is_isofibration, solve_lifting, squares, GeneratingSet, LiftingSquare,
};
pub use pushout::{pushout_category, CatPushout, DEFAULT_PUSHOUT_BUDGET};
pub use soa::{bounded_soa, unsolved_squares, AttachedCell, CellStage, FactorizationResult, FactorizationSummary};

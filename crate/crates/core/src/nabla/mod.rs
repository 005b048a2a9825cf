//! The category `∇ = Δ⋊C₂` truncated at a dimension bound, truncated
//! simplicial and real simplicial sets, and normal monomorphisms.
//!
//! A truncated simplicial set is a [`SetDiagram`](crate::setval::SetDiagram)
//! over [`SimplexCategory::opposite`]; a truncated real simplicial set is one
//! over [`Nabla::opposite`].

mod real;
mod simplex;

pub use real::{build_nabla, c2, flip, MonotonePair, Nabla};
pub use simplex::{boundary_inclusion, check_simplicial, monotone_maps, simplex_to_point, SimplexCategory};

/// Default truncation level.
pub const DEFAULT_DIM: usize = 3;
